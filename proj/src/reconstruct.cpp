#include "powcirc/reconstruct.hpp"

#include <algorithm>
#include <optional>
#include <thread>
#include <unordered_map>

#include "powcirc/factor.hpp"
#include "powcirc/linalg.hpp"

namespace powcirc {

UniPoly PowCircuitUni::expand(const PrimeField& f) const {
    UniPoly acc = UniPoly::zero(f);
    for (const auto& t : terms) acc = acc + t.base.pow(d).scaled(t.alpha);
    return acc;
}

SparsePoly PowCircuitMulti::expand(const PrimeField& f) const {
    SparsePoly acc = SparsePoly::zero(f, n);
    for (const auto& t : terms) acc = acc + t.base.pow(d).scaled(t.lambda);
    return acc;
}

namespace {

void enumerate_vectors(std::span<const UniPoly> factors, std::size_t idx, u64 budget,
                       UniPoly& current, const std::function<void(const UniPoly&)>& visit) {
    if (idx == factors.size()) {
        visit(current);
        return;
    }
    const u64 deg = static_cast<u64>(factors[idx].degree());
    UniPoly saved = current;
    for (u64 e = 0; e * deg <= budget; ++e) {
        if (e > 0) current = current * factors[idx];
        enumerate_vectors(factors, idx + 1, budget - e * deg, current, visit);
    }
    current = saved;
}

}  // namespace

std::vector<UniPoly> brute_force_recover(const KernelBasis& kb, std::span<const UniPoly> factors,
                                         u64 d, u64 delta) {
    if (kb.basis.empty()) return {};
    const PrimeField& f = kb.basis[0].field();
    std::vector<UniPoly> out;
    UniPoly one = UniPoly::constant(f, 1);
    enumerate_vectors(factors, 0, delta, one, [&](const UniPoly& g) {
        if (in_span(kb.basis, g.pow(d), kb.D)) out.push_back(g.monic());
    });
    std::sort(out.begin(), out.end(),
              [](const UniPoly& a, const UniPoly& b) { return compare_canonical(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct DfsContext {
    std::span<const UniPoly> factors;
    u64 d;
    std::size_t budget;
    i64 D;
    std::vector<UniPoly> recovered;
    DfsStats stats;
};

void dfs_walk(DfsContext& ctx, const KernelBasis& ambient, const UniPoly& prefix_pow) {
    if (ambient.basis.size() == 1) {
        UniPoly found = prefix_pow * ambient.basis[0].monic();
        for (const UniPoly& q : ctx.recovered) {
            if (q == found) {
                ++ctx.stats.leaves;
                return;
            }
        }
        ctx.recovered.push_back(std::move(found));
        ++ctx.stats.leaves;
        return;
    }
    ++ctx.stats.interior_nodes;
    for (std::size_t j = 0; j < ctx.factors.size(); ++j) {
        KernelBasis a_j = subspace_with_factor(ambient, ctx.factors[j], ctx.d);
        if (a_j.basis.empty()) continue;

        // Recovered outputs reduced to the current ambient space.
        std::vector<UniPoly> u_e;
        for (const UniPoly& q : ctx.recovered) {
            if (q.divisible_by(prefix_pow)) u_e.push_back(q.exact_div(prefix_pow));
        }
        bool covered = true;
        for (const UniPoly& g : a_j.basis) {
            if (!in_span(u_e, g, ctx.D)) {
                covered = false;
                break;
            }
        }
        if (covered) continue;

        ++ctx.stats.descents;
        if (ctx.stats.descents > ctx.budget)
            fail(errc::internal, "DFS descent budget exceeded; the input is outside the class");

        const UniPoly phi_d = ctx.factors[j].pow(ctx.d);
        std::vector<UniPoly> child;
        child.reserve(a_j.basis.size());
        for (const UniPoly& g : a_j.basis) child.push_back(g.exact_div(phi_d));
        KernelBasis child_basis{echelon_canonical(child, ctx.D), ctx.D};
        dfs_walk(ctx, child_basis, prefix_pow * phi_d);
    }
}

}  // namespace

std::vector<UniPoly> dfs_recover(const KernelBasis& kb, std::span<const UniPoly> factors, u64 d,
                                 u64 delta, DfsStats* stats) {
    if (kb.basis.empty()) return {};
    const PrimeField& f = kb.basis[0].field();
    DfsContext ctx{factors, d, kb.basis.size() * static_cast<std::size_t>(delta), kb.D, {}, {}};
    KernelBasis root{echelon_canonical(kb.basis, kb.D), kb.D};
    dfs_walk(ctx, root, UniPoly::constant(f, 1));
    if (stats) *stats = ctx.stats;
    std::sort(ctx.recovered.begin(), ctx.recovered.end(),
              [](const UniPoly& a, const UniPoly& b) { return compare_canonical(a, b) < 0; });
    return ctx.recovered;
}

PowCircuitUni reconstruct_univariate(const UniPoly& f, u64 r, u64 d, u64 delta) {
    if (r < 1 || d < 1 || delta < 1) fail(errc::parameter, "reconstruction needs r, d, delta >= 1");
    const PrimeField& field = f.field();
    const u128 regime = static_cast<u128>(r + 1) * (r + 1) * (r + 1) * (r + 1) * delta;
    if (static_cast<u128>(d) <= regime)
        fail(errc::unsupported, "regime requires d > (r+1)^4 * delta = " +
                                    std::to_string(static_cast<u64>(regime)));
    if (static_cast<u128>(field.p()) <= static_cast<u128>(2) * r * d * delta)
        fail(errc::unsupported, "regime requires p > 2*r*d*delta");
    if (f.is_zero()) fail(errc::not_in_class, "the zero polynomial is not a sum of powers");
    const i64 max_deg = static_cast<i64>(d * delta);
    if (f.degree() > max_deg)
        fail(errc::not_in_class, "input degree exceeds d*delta");

    PowCircuitUni out;
    out.d = d;

    // Perfect-power fast path.
    if (auto pp = perfect_dth_root(f, d)) {
        if (pp->second.degree() <= static_cast<i64>(delta)) {
            out.terms.push_back({pp->first, pp->second});
            return out;
        }
    }

    AnnihilatorResult ann = solve_annihilator(f, r, delta);

    Factorization fact = factor_univariate(ann.L.top());
    std::vector<UniPoly> factors;
    for (const auto& [phi, mult] : fact.factors) {
        if (phi.degree() <= static_cast<i64>(delta)) factors.push_back(phi);
    }

    KernelBasis kb = kernel_basis(ann.L, max_deg);
    std::vector<UniPoly> powers = dfs_recover(kb, factors, d, delta);
    if (powers.empty()) fail(errc::not_in_class, "no d-th powers found in the kernel");

    // Solve f = sum alpha_i * powers_i.
    FpMatrix m(field, static_cast<std::size_t>(max_deg) + 1, powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        for (std::size_t b = 0; b < powers[i].coeffs().size(); ++b) m.at(b, i) = powers[i].coeffs()[b];
    }
    std::vector<u64> rhs(static_cast<std::size_t>(max_deg) + 1, 0);
    for (std::size_t b = 0; b < f.coeffs().size(); ++b) rhs[b] = f.coeffs()[b];
    LinearSolution sol = solve_linear(m, rhs);
    if (!sol.consistent || !sol.unique)
        fail(errc::not_in_class, "coefficient system has no unique solution");

    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (sol.x[i] == 0) fail(errc::not_in_class, "recovered power with zero coefficient");
        auto root = perfect_dth_root(powers[i], d);
        if (!root || root->second.degree() > static_cast<i64>(delta))
            fail(errc::not_in_class, "kernel element is not a d-th power of bounded degree");
        out.terms.push_back({sol.x[i], root->second});
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const PowerTermUni& a, const PowerTermUni& b) {
        return compare_canonical(a.base, b.base) < 0;
    });
    return out;
}

PowCircuitUni reconstruct_univariate(const std::function<u64(u64)>& oracle, const PrimeField& field,
                                     u64 r, u64 d, u64 delta) {
    const u64 deg_bound = d * delta;
    if (field.p() <= deg_bound) fail(errc::unsupported, "field too small to interpolate degree d*delta");
    std::vector<std::pair<u64, u64>> points;
    points.reserve(deg_bound + 1);
    for (u64 t = 0; t <= deg_bound; ++t) points.emplace_back(t, oracle(t) % field.p());
    UniPoly f = interpolate_univariate(field, points, deg_bound);
    return reconstruct_univariate(f, r, d, delta);
}

std::vector<u64> LabeledUniOutput::labels(const PrimeField& f) const {
    std::vector<u64> out;
    out.reserve(pairs.size());
    for (const auto& [lambda, h] : pairs) out.push_back(f.mul(lambda, f.pow(h.coeff(0), d)));
    return out;
}

std::map<std::size_t, LabeledUniOutput> align_by_labels(
    const std::map<std::size_t, LabeledUniOutput>& outputs, const PrimeField& f) {
    std::map<std::size_t, LabeledUniOutput> aligned;
    std::optional<std::vector<u64>> reference;
    for (const auto& [key, output] : outputs) {
        std::vector<u64> labels = output.labels(f);
        std::vector<std::size_t> order(labels.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
        std::vector<u64> sorted;
        sorted.reserve(labels.size());
        for (std::size_t i : order) sorted.push_back(labels[i]);
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            fail(errc::alignment, "duplicate labels within one projection");
        if (reference) {
            if (*reference != sorted) fail(errc::alignment, "label multisets differ across projections");
        } else {
            reference = sorted;
        }
        LabeledUniOutput reordered;
        reordered.d = output.d;
        for (std::size_t i : order) reordered.pairs.push_back(output.pairs[i]);
        aligned.emplace(key, std::move(reordered));
    }
    return aligned;
}

namespace {

struct PairOutcome {
    bool ok = false;
    LabeledUniOutput output;
};

// Deterministic parallel map over an index range.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t chunk = (count + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

struct RobustChoice {
    Rat eps{1, 1};
    u64 q = 0;
    u64 asize = 0;
};

// Fast profile: take the first epsilon in the ladder whose robust set both
// fits the field and stays under the tag-count cap.
std::optional<RobustChoice> pick_fast_robust_eps(const PrimeField& field, std::uint32_t n, u64 s,
                                                 u64 delta, u64 r, u64 cap) {
    std::vector<Rat> ladder{Rat(1, 100 * static_cast<i64>(n) * static_cast<i64>(r) * static_cast<i64>(r)),
                            Rat(1, 4), Rat(1, 2), Rat(1, 1), Rat(2, 1), Rat(3, 1), Rat(4, 1)};
    for (const Rat& eps : ladder) {
        try {
            u64 q = choose_robust_q(n, s, delta, eps);
            u64 asize = ceil_div_rat(2 * static_cast<u64>(n) * delta * q, eps);
            u64 size = (static_cast<u64>(n) + 1) * (q - 1) * asize;
            if (size > cap) continue;
            if (field.p() < std::max(asize + 1, delta * q + 2)) continue;
            return RobustChoice{eps, q, asize};
        } catch (const error&) {
            continue;
        }
    }
    return std::nullopt;
}

}  // namespace

PowCircuitMulti reconstruct_multivariate(const std::function<u64(std::span<const u64>)>& oracle,
                                         const PrimeField& field, std::uint32_t n, u64 r, u64 s,
                                         u64 delta, u64 d, const MultiOptions& options,
                                         MultiStats* stats_out) {
    if (n < 1 || r < 1 || s < 1 || delta < 1 || d < 1)
        fail(errc::parameter, "reconstruction needs n, r, s, delta, d >= 1");
    const u128 regime = static_cast<u128>(r + 1) * (r + 1) * (r + 1) * (r + 1) * delta;
    if (static_cast<u128>(d) <= regime)
        fail(errc::unsupported,
             "regime requires d > (r+1)^4 * delta = " + std::to_string(static_cast<u64>(regime)));
    if (static_cast<u128>(field.p()) <= static_cast<u128>(2) * r * d * delta)
        fail(errc::unsupported, "regime requires p > 2*r*d*delta");
    // The full construction needs the larger field bound; the fast profile
    // runs outside those constants and only needs the operational minimum.
    const u128 min_p = static_cast<u128>(r) * d * delta * (s * s * static_cast<u128>(n) + delta);
    if (!options.fast && static_cast<u128>(field.p()) < min_p)
        fail(errc::unsupported, "regime requires p >= r*d*delta*(s^2*n + delta) = " +
                                    std::to_string(static_cast<u64>(min_p)) +
                                    " (the fast profile relaxes this)");

    MultiStats stats;
    stats.fast_profile = options.fast;

    // Counting wrapper around the black box.
    u64 call_count = 0;
    auto counted = [&](std::span<const u64> pt) -> u64 {
        ++call_count;
        return oracle(pt) % field.p();
    };

    // Anchor set H1 and PIT pre-check set.
    HittingSetSpec h1 = options.fast
                            ? build_hitting_set(field, n, 1, 1, 1, delta, Rat(1, 2))
                            : build_hitting_set(field, n, 2, 2 * s, d, delta,
                                                Rat(1, 2 * static_cast<i64>(r) * static_cast<i64>(r)));

    // Robust set H2.
    Rat eps_robust(1, 100 * static_cast<i64>(n) * static_cast<i64>(r) * static_cast<i64>(r));
    if (options.fast) {
        auto choice = pick_fast_robust_eps(field, n, s, delta, r, options.fast_h2_cap);
        if (!choice)
            fail(errc::reconstruction_failure,
                 "no robust-set parameters fit this field under the fast profile");
        eps_robust = choice->eps;
    }
    RobustSet h2 = build_robust_set(field, n, s, delta, eps_robust);
    stats.eps_robust = eps_robust;
    stats.h1_points = h1.size();
    stats.h2_points = h2.size();

    {
        PitVerdict verdict;
        if (options.fast) {
            verdict = pit_test(counted, h1);
            if (verdict.zero) {
                // Smoke-scale pre-check: confirm on the robust set as well
                // before declaring the oracle identically zero.
                for (std::size_t t = 0; t < h2.size() && verdict.zero; ++t) {
                    std::vector<u64> pt = h2.coords(h2.tag(t));
                    if (counted(pt) != 0) verdict.zero = false;
                }
            }
        } else {
            HittingSetSpec pre = build_hitting_set(field, n, r, s, d, delta, Rat(1, 2));
            verdict = pit_test(counted, pre);
        }
        if (verdict.zero) {
            if (stats_out) {
                stats.oracle_calls = call_count;
                *stats_out = stats;
            }
            return PowCircuitMulti{n, d, {}};
        }
    }

    // Deduplicate anchor and direction coordinates.
    std::vector<std::vector<u64>> u_coords;
    std::vector<std::size_t> u_first_index;
    {
        std::map<std::vector<u64>, std::size_t> seen;
        for (std::size_t i = 0; i < h1.size(); ++i) {
            std::vector<u64> pt = h1.point(i);
            if (seen.emplace(pt, i).second) {
                u_coords.push_back(std::move(pt));
                u_first_index.push_back(i);
            }
        }
    }
    std::vector<std::vector<u64>> v_coords;        // distinct direction coordinates
    std::vector<std::size_t> tag_to_vslot(h2.size());
    {
        std::map<std::vector<u64>, std::size_t> seen;
        for (std::size_t t = 0; t < h2.size(); ++t) {
            std::vector<u64> pt = h2.coords(h2.tag(t));
            auto [it, inserted] = seen.emplace(std::move(pt), v_coords.size());
            if (inserted) v_coords.push_back(it->first);
            tag_to_vslot[t] = it->second;
        }
    }

    const u64 deg_bound = d * delta;
    if (field.p() <= deg_bound) fail(errc::unsupported, "field too small to interpolate along lines");

    // Anchor values f(u), shared by every pair with t = 0.
    std::vector<u64> anchor_value(u_coords.size());
    for (std::size_t ui = 0; ui < u_coords.size(); ++ui) anchor_value[ui] = counted(u_coords[ui]);

    // Phase A: univariate recovery for every (anchor, direction) pair.
    const std::size_t n_u = u_coords.size();
    const std::size_t n_v = v_coords.size();
    std::vector<PairOutcome> outcomes(n_u * n_v);
    stats.pairs_total = outcomes.size();

    const std::size_t block = 4096;
    std::vector<std::vector<u64>> line_values(std::min(block, outcomes.size()));
    for (std::size_t begin = 0; begin < outcomes.size(); begin += block) {
        const std::size_t end = std::min(outcomes.size(), begin + block);
        // Gather oracle values sequentially; the solver below is pure.
        for (std::size_t idx = begin; idx < end; ++idx) {
            const std::size_t ui = idx / n_v;
            const std::size_t vi = idx % n_v;
            std::vector<u64>& vals = line_values[idx - begin];
            vals.assign(deg_bound + 1, 0);
            vals[0] = anchor_value[ui];
            std::vector<u64> pt(n);
            for (u64 t = 1; t <= deg_bound; ++t) {
                for (std::uint32_t c = 0; c < n; ++c) {
                    u64 step = field.sub(v_coords[vi][c], u_coords[ui][c]);
                    pt[c] = field.add(u_coords[ui][c], field.mul(t % field.p(), step));
                }
                vals[t] = counted(pt);
            }
        }
        // The solver phase is pure; the black box is only queried in the
        // sequential gather above, so jobs never touch the oracle.
        parallel_for(end - begin, options.jobs, [&](std::size_t off) {
            const std::size_t idx = begin + off;
            const std::vector<u64>& vals = line_values[off];
            bool all_zero = true;
            for (u64 v : vals) all_zero = all_zero && v == 0;
            if (all_zero) return;  // zero restriction: failed pair
            std::vector<std::pair<u64, u64>> pts;
            pts.reserve(vals.size());
            for (u64 t = 0; t < vals.size(); ++t) pts.emplace_back(t, vals[t]);
            try {
                UniPoly restricted = interpolate_univariate(field, pts, deg_bound);
                PowCircuitUni uni = reconstruct_univariate(restricted, r, d, delta);
                LabeledUniOutput out;
                out.d = d;
                for (const auto& term : uni.terms) out.pairs.emplace_back(term.alpha, term.base);
                outcomes[idx].output = std::move(out);
                outcomes[idx].ok = true;
            } catch (const error&) {
                outcomes[idx].ok = false;
            }
        });
    }

    std::size_t r_max = 0;
    for (const auto& o : outcomes) {
        if (o.ok) r_max = std::max(r_max, o.output.pairs.size());
    }
    for (const auto& o : outcomes) {
        if (!o.ok) ++stats.pairs_failed;
    }
    if (r_max == 0) fail(errc::reconstruction_failure, "every line restriction failed to reconstruct");

    // Phase B: good directions per anchor, then the anchor choice.
    auto pair_outcome = [&](std::size_t ui, std::size_t tag) -> const PairOutcome& {
        return outcomes[ui * n_v + tag_to_vslot[tag]];
    };
    auto tag_good = [&](std::size_t ui, std::size_t tag) -> bool {
        const PairOutcome& o = pair_outcome(ui, tag);
        if (!o.ok || o.output.pairs.size() != r_max) return false;
        std::vector<u64> labels = o.output.labels(field);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == 0 || o.output.pairs[i].second.coeff(0) == 0) return false;
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                if (labels[i] == labels[j]) return false;
            }
        }
        return true;
    };

    // Threshold |V_u| >= (1 - eps * C(r,2)) * |H2|, with a majority floor in
    // the fast profile where the formula can become vacuous.
    const u64 h2_total = h2.size();
    auto anchor_is_good = [&](std::size_t good_count) -> bool {
        if (good_count == 0) return false;
        const i64 choose2 = static_cast<i64>(r_max) * (static_cast<i64>(r_max) - 1) / 2;
        // good_count >= (1 - eps*C) * total  <=>  good*den >= total*(den - num*C)
        const __int128 lhs = static_cast<__int128>(good_count) * eps_robust.den;
        const __int128 rhs =
            static_cast<__int128>(h2_total) * (eps_robust.den - eps_robust.num * choose2);
        bool ok = lhs >= rhs;
        if (options.fast) ok = ok && 2 * good_count >= h2_total;
        return ok;
    };

    stats.distinct_anchors = n_u;
    std::optional<std::size_t> anchor;
    std::vector<std::size_t> anchor_tags;
    for (std::size_t ui = 0; ui < n_u; ++ui) {
        std::vector<std::size_t> good_tags;
        for (std::size_t tag = 0; tag < h2_total; ++tag) {
            if (tag_good(ui, tag)) good_tags.push_back(tag);
        }
        if (anchor_is_good(good_tags.size())) {
            ++stats.good_anchors;
            if (!anchor) {
                anchor = ui;
                anchor_tags = std::move(good_tags);
            }
        }
    }
    if (!anchor) fail(errc::reconstruction_failure, "no anchor point qualified");
    stats.anchor_index = u_first_index[*anchor];

    // Alignment over the chosen anchor.
    std::map<std::size_t, LabeledUniOutput> per_tag;
    for (std::size_t tag : anchor_tags) per_tag.emplace(tag, pair_outcome(*anchor, tag).output);
    std::map<std::size_t, LabeledUniOutput> aligned = align_by_labels(per_tag, field);

    std::vector<u64> common_labels = aligned.begin()->second.labels(field);

    // Decode each base from h(1)/h(0) across the good directions.
    PowCircuitMulti result;
    result.n = n;
    result.d = d;
    for (std::size_t i = 0; i < r_max; ++i) {
        std::vector<std::optional<u64>> values(h2_total);
        for (const auto& [tag, output] : aligned) {
            const UniPoly& h = output.pairs[i].second;
            u64 h1v = 0;
            for (u64 c : h.coeffs()) h1v = field.add(h1v, c);  // h(1)
            values[tag] = field.div(h1v, h.coeff(0));
        }
        SparsePoly base = robust_decode(h2, [&](std::size_t idx) { return values[idx]; });
        if (base.is_zero()) fail(errc::not_in_class, "decoded base is zero");
        u64 lc = base.leading_coeff();
        u64 lambda = field.mul(common_labels[i], field.pow(lc, d));
        // The decoded polynomial is f_i / f_i(u); rescale to a monic leading
        // coefficient and push the scale into lambda.
        SparsePoly monic_base = base.scaled(field.inv(lc));
        result.terms.push_back({lambda, std::move(monic_base)});
    }

    for (std::size_t i = 0; i < result.terms.size(); ++i) {
        for (std::size_t j = i + 1; j < result.terms.size(); ++j) {
            if (result.terms[i].base.is_associate_of(result.terms[j].base))
                fail(errc::not_in_class, "recovered associate bases");
        }
    }
    std::sort(result.terms.begin(), result.terms.end(),
              [](const PowerTermMulti& a, const PowerTermMulti& b) {
                  return compare_canonical(a.base, b.base) < 0;
              });

    stats.oracle_calls = call_count;
    if (stats_out) *stats_out = stats;
    return result;
}

}  // namespace powcirc
