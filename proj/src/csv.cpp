#include "oeb/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "oeb/errors.hpp"

namespace oeb {

std::string format_full(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string format_vector(const Eigen::VectorXd& v) {
    std::string out;
    for (int i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += format_full(v[i]);
    }
    return out;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
    os << "n,x_n,y_n,err_n,log10_err_n\n";
    for (std::size_t n = 0; n < trace.x.size(); ++n) {
        os << n << ',' << format_vector(trace.x[n]) << ',';
        if (n < trace.y.size()) os << format_vector(trace.y[n]);
        os << ',' << format_full(trace.err[n]) << ',' << format_full(trace.log10_err[n])
           << '\n';
    }
}

void write_bounds_csv(std::ostream& os, const BoundsTrace* upper, const BoundsTrace* lower) {
    os << "n,U_n,L_n,u_factor,l_factor,A_k\n";
    std::size_t rows = 0;
    if (upper) rows = std::max(rows, upper->u.size());
    if (lower) rows = std::max(rows, lower->l.size());
    for (std::size_t n = 0; n < rows; ++n) {
        os << n << ',';
        if (upper && n < upper->u.size()) os << format_full(upper->u[n]);
        os << ',';
        const bool l_published =
            lower && n < lower->l.size() &&
            (lower->lower_defined ||
             static_cast<std::int64_t>(n) < lower->first_lower_violation);
        if (l_published) os << format_full(lower->l[n]);
        os << ',';
        if (upper && n < upper->u_factors.size()) os << format_full(upper->u_factors[n]);
        os << ',';
        if (lower && n < lower->l_factors.size()) os << format_full(lower->l_factors[n]);
        os << ',';
        const BoundsTrace* aux = upper && !upper->a_aux.empty() ? upper : lower;
        if (aux && n < aux->a_aux.size()) os << format_full(aux->a_aux[n]);
        os << '\n';
    }
}

void write_rate_csv(std::ostream& os, const RateReport& rate, const IterationTrace& trace) {
    const bool modified = rate.scheme == SchemeId::ModifiedIshikawa;
    os << "n,err_next,log10_err_next,denom,sigma_n,sigma_log10,beta_min,"
          "beta_max_guaranteed,beta_max_paper,flags\n";
    const std::string flags =
        std::string("cond_ra_1=") + (rate.hypotheses.cond_ra_1 ? "1" : "0") +
        ";remark_delta=" + (rate.hypotheses.remark_delta ? "1" : "0") +
        ";cond_ra_im=" + (rate.hypotheses.cond_ra_im ? "1" : "0");
    for (std::size_t n = 0; n < rate.sigma.size(); ++n) {
        const double err_next = trace.err[n + 1];
        os << n << ',' << format_full(err_next) << ',' << format_full(trace.log10_err[n + 1])
           << ',' << format_full(rate.denominator[n]) << ',' << format_full(rate.sigma[n])
           << ',' << format_full(rate.sigma[n] / std::log(10.0)) << ','
           << format_full(rate.beta_min) << ',' << format_full(rate.beta_max_guaranteed)
           << ',';
        if (modified && rate.beta_max_paper) os << format_full(*rate.beta_max_paper);
        os << ',' << flags << '\n';
    }
}

void write_compare_csv(std::ostream& os, const IterationTrace& trace_i,
                       const IterationTrace& trace_im, const ComparisonReport& cmp) {
    os << "n,err_I,err_IM,ratio,log10_ratio\n";
    for (std::size_t n = 0; n < cmp.ratio.size(); ++n) {
        const double r = cmp.ratio[n];
        os << n << ',' << format_full(trace_i.err[n]) << ',' << format_full(trace_im.err[n])
           << ',' << format_full(r) << ','
           << format_full(r > 0 ? std::log10(r)
                                : -std::numeric_limits<double>::infinity())
           << '\n';
    }
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::ConfigError, "cannot open '" + path + "' for writing");
    out << contents;
    if (!out) raise(Errc::ConfigError, "write to '" + path + "' failed");
}

} // namespace oeb
