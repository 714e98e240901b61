#include "census/modp.hpp"

#include <stdexcept>

namespace census {

ModPoly to_mod_poly(const IntPolynomial& f, i64 p) {
    if (p < 2 || p > kMaxModPrime) throw std::invalid_argument("to_mod_poly: modulus out of range");
    if (f.arity() > kMaxModArity) throw std::invalid_argument("to_mod_poly: arity too large");
    ModPoly m;
    m.p = p;
    m.arity = f.arity();
    m.degree = 0;
    mpz_class pz = static_cast<long>(p), r;
    for (const auto& [mon, c] : f.terms()) {
        mpz_mod(r.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t());
        if (r == 0) continue;
        ModPoly::Term t;
        for (std::size_t i = 0; i < mon.e.size(); ++i) {
            if (mon.e[i] > 255) throw std::invalid_argument("to_mod_poly: exponent too large");
            t.e[i] = static_cast<std::uint8_t>(mon.e[i]);
        }
        t.c = to_i64(r);
        m.terms.push_back(t);
        m.degree = std::max(m.degree, mon.total_degree());
    }
    return m;
}

ModPEvaluator::ModPEvaluator(const ModPoly& f) : f_(f), stride_(f.degree + 1) {
    pow_.assign(static_cast<std::size_t>(f_.p) * static_cast<std::size_t>(stride_), 0);
    for (i64 v = 0; v < f_.p; ++v) {
        i64 acc = 1 % f_.p;
        for (int e = 0; e < stride_; ++e) {
            pow_[static_cast<std::size_t>(v * stride_ + e)] = acc;
            acc = acc * v % f_.p;
        }
    }
}

i64 ModPEvaluator::eval(const std::vector<i64>& x) const {
    i64 sum = 0;
    for (const auto& t : f_.terms) {
        i64 prod = t.c;
        for (int v = 0; v < f_.arity; ++v) {
            std::uint8_t e = t.e[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            prod = prod * pow_[static_cast<std::size_t>(x[static_cast<std::size_t>(v)] * stride_ + e)] % f_.p;
        }
        sum += prod;
    }
    return sum % f_.p;
}

void for_each_projective_rep(i64 p, int arity,
                             const std::function<void(const std::vector<i64>&)>& fn) {
    std::vector<i64> x(static_cast<std::size_t>(arity), 0);
    for (int lead = 0; lead < arity; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[static_cast<std::size_t>(lead)] = 1;
        int free_from = lead + 1;
        if (free_from >= arity) {
            fn(x);
            continue;
        }
        for (;;) {
            fn(x);
            int i = arity - 1;
            while (i >= free_from && x[static_cast<std::size_t>(i)] == p - 1) {
                x[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < free_from) break;
            ++x[static_cast<std::size_t>(i)];
        }
    }
}

}  // namespace census
