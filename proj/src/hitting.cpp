#include "powcirc/hitting.hpp"

namespace powcirc {

HittingSetSpec::HittingSetSpec(const PrimeField& field, std::uint32_t n, u64 r, u64 s, u64 d,
                               u64 delta, Rat eps_user, Rat eps_internal, u64 q, u64 t, u64 mk)
    : f_(field),
      n_(n),
      r_(r),
      s_(s),
      d_(d),
      delta_(delta),
      eps_user_(eps_user),
      eps_internal_(eps_internal),
      q_(q),
      t_(t),
      mk_(mk) {}

std::vector<u64> HittingSetSpec::point(std::size_t index) const {
    if (index >= size()) fail(errc::parameter, "hitting set point index out of range");
    const u64 k = point_k(index);
    const u64 alpha = point_alpha(index);
    std::vector<u64> x(n_);
    u64 kpow = 1 % q_;
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (i > 0) kpow = static_cast<u64>(static_cast<u128>(kpow) * (k % q_) % q_);
        x[i] = f_.pow(alpha, kpow);
    }
    return x;
}

HittingSetSpec build_hitting_set(const PrimeField& field, std::uint32_t n, u64 r, u64 s, u64 d,
                                 u64 delta, Rat eps) {
    if (n < 1 || r < 1 || s < 1 || d < 1 || delta < 1)
        fail(errc::parameter, "hitting set needs n, r, s, d, delta >= 1");
    if ((r - 1) * (r - 1) > d + 1)
        fail(errc::unsupported, "hypothesis (r-1)^2 <= d+1 violated: (" + std::to_string(r) +
                                    "-1)^2 = " + std::to_string((r - 1) * (r - 1)) + " > " +
                                    std::to_string(d + 1));
    if (!eps.positive() || Rat(1, 2) < eps)
        fail(errc::unsupported, "hitting set eps must satisfy 0 < eps <= 1/2, got " + eps.str());
    const u128 min_p = static_cast<u128>(r) * d * delta * (s * s * static_cast<u128>(n) + delta);
    if (static_cast<u128>(field.p()) < min_p)
        fail(errc::unsupported,
             "field too small: need p >= r*d*delta*(s^2*n + delta) = " +
                 std::to_string(static_cast<u64>(min_p)) + ", got p = " + std::to_string(field.p()));

    const u64 base = r * r * s * s * static_cast<u64>(n);
    const u64 q = find_prime_in_range(base + delta + 1, 2 * base + 2 * delta);
    const u64 t = 2 * base + 2 * delta + 1;
    const Rat eps_int = eps.half();
    const u64 mk = ceil_div_rat(delta * q * d, eps_int);
    if (mk >= field.p())
        fail(errc::unsupported, "field too small to supply m_k = " + std::to_string(mk) +
                                    " distinct abscissae; need p > m_k");
    return HittingSetSpec(field, n, r, s, d, delta, eps, eps_int, q, t, mk);
}

PitVerdict pit_test(const std::function<u64(std::span<const u64>)>& oracle,
                    const HittingSetSpec& hs) {
    PitVerdict v;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        std::vector<u64> pt = hs.point(i);
        u64 val = oracle(pt);
        if (val % hs.field().p() != 0) {
            v.zero = false;
            v.witness_index = i;
            v.witness_point = std::move(pt);
            v.witness_value = val % hs.field().p();
            return v;
        }
    }
    return v;
}

std::string serialize_hitting_set(const HittingSetSpec& hs) {
    std::string out = "hittingset n=" + std::to_string(hs.nvars()) + " r=" + std::to_string(hs.r()) +
                      " s=" + std::to_string(hs.s()) + " d=" + std::to_string(hs.d()) +
                      " delta=" + std::to_string(hs.delta()) + " eps_num=" + std::to_string(hs.eps_user().num) +
                      " eps_den=" + std::to_string(hs.eps_user().den) + " p=" + std::to_string(hs.field().p()) +
                      " q=" + std::to_string(hs.q()) + " t=" + std::to_string(hs.t()) +
                      " mk=" + std::to_string(hs.mk()) + "\n";
    for (std::size_t i = 0; i < hs.size(); ++i) {
        out += "point k=" + std::to_string(hs.point_k(i)) + " alpha=" + std::to_string(hs.point_alpha(i)) + "\n";
    }
    return out;
}

}  // namespace powcirc
