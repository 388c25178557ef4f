#include "roadsir/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "roadsir/rootfind.hpp"

namespace roadsir {

namespace {

void require_nonnegative_arg(double v) {
    if (!(v >= 0.0)) {
        throw std::domain_error("kpp reaction: argument must be nonnegative, got " +
                                std::to_string(v));
    }
}

}  // namespace

void ModelParams::validate() const {
    const struct {
        const char* name;
        double value;
    } fields[] = {{"d", d},   {"D", D},   {"alpha", alpha}, {"beta", beta},
                  {"mu", mu}, {"nu", nu}, {"s0", s0}};
    for (const auto& f : fields) {
        if (!(f.value > 0.0) || !std::isfinite(f.value)) {
            throw std::invalid_argument(std::string("ModelParams: ") + f.name +
                                        " must be strictly positive and finite");
        }
    }
    const double r = r0();
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("ModelParams: r0 = s0*beta/alpha must be finite and positive");
    }
}

double kpp_f(double v, const ModelParams& p) {
    p.validate();
    require_nonnegative_arg(v);
    // -expm1 keeps full precision for small beta*v where 1-exp cancels.
    return -p.s0 * std::expm1(-p.beta * v) - p.alpha * v;
}

double kpp_f_prime(double v, const ModelParams& p) {
    p.validate();
    require_nonnegative_arg(v);
    return p.s0 * p.beta * std::exp(-p.beta * v) - p.alpha;
}

double v_star(const ModelParams& p) {
    p.validate();
    if (!(p.r0() > 1.0)) {
        throw no_spreading_error("v_star: no positive root of f for r0 <= 1");
    }
    // f > 0 just right of 0 and f(v) <= s0 - alpha*v < 0 at the upper bound.
    const double hi = p.s0 * p.r0() / p.alpha;
    auto f = [&p](double v) { return -p.s0 * std::expm1(-p.beta * v) - p.alpha * v; };
    double lo = hi;
    do {
        lo *= 0.5;
    } while (f(lo) <= 0.0 && lo > 1e-300);
    return bisect_root(f, lo, hi, 1e-12);
}

double c_sir(const ModelParams& p) {
    p.validate();
    if (!(p.r0() > 1.0)) {
        throw no_spreading_error("c_sir: spreading speed undefined for r0 <= 1");
    }
    return 2.0 * std::sqrt(p.d * p.alpha * (p.r0() - 1.0));
}

ReducedParams reduce(const ModelParams& p) {
    p.validate();
    ReducedParams r;
    r.dd = p.D / p.d;
    r.r0 = p.r0();
    r.mu_bar = p.mu / p.alpha;
    r.nu_bar = p.nu / std::sqrt(p.d * p.alpha);
    if (r.r0 > 1.0) {
        const double w = 2.0 * std::sqrt(r.r0 - 1.0);
        r.w_sir = w;
        r.lam = r.mu_bar / (r.nu_bar * w);
        r.rho = w / r.nu_bar;
    }
    return r;
}

}  // namespace roadsir
