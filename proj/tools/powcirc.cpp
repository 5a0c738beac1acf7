// powcirc: identity testing and reconstruction for sums of powers of sparse
// polynomials over prime fields.
//
// Exit codes: 0 success (including both PIT verdicts), 1 input or runtime
// failure, 2 usage, 3 unsupported parameters.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "powcirc/circuit.hpp"
#include "powcirc/factor.hpp"
#include "powcirc/rng.hpp"

namespace {

using namespace powcirc;

constexpr const char* kUsage =
    "usage: powcirc <command> [args]\n"
    "\n"
    "commands:\n"
    "  pit <circuit-file> [--eps a/b]\n"
    "      print ZERO or NONZERO with the first witness point\n"
    "  reconstruct <circuit-file> [--out f] [--verify expand|sample:<k>] [--fast] [--jobs N]\n"
    "      recover the circuit through black-box evaluation only\n"
    "  hitting-set --n N --r R --s S --d D --delta DD [--eps a/b] [--p P] --out f\n"
    "      write the explicit hitting set point list\n"
    "  selftest\n"
    "      run the bundled invariant corpus\n";

[[noreturn]] void usage_error(const std::string& message) {
    std::cerr << "powcirc: " << message << "\n" << kUsage;
    std::exit(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io, "cannot write " + path);
    out << content;
}

Rat parse_eps(const std::string& text) {
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) usage_error("epsilon must be written as a/b");
    try {
        i64 num = std::stoll(text.substr(0, slash));
        i64 den = std::stoll(text.substr(slash + 1));
        return Rat(num, den);
    } catch (const std::exception&) {
        usage_error("epsilon must be written as a/b");
    }
}

unsigned jobs_from_env() {
    const char* env = std::getenv("POWCIRC_JOBS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v >= 1 ? static_cast<unsigned>(v) : 1;
}

int cmd_pit(const std::vector<std::string>& args) {
    if (args.empty()) usage_error("pit needs a circuit file");
    Rat eps(1, 2);
    std::string path = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--eps" && i + 1 < args.size()) {
            eps = parse_eps(args[++i]);
        } else {
            usage_error("unknown pit argument '" + args[i] + "'");
        }
    }
    CircuitDoc doc = parse_circuit(read_file(path));
    PrimeField field(doc.p);
    HittingSetSpec hs = build_hitting_set(field, doc.n, doc.effective_r(), doc.effective_s(), doc.d,
                                          doc.effective_delta(), eps);
    PitVerdict verdict = pit_test(
        [&](std::span<const u64> pt) { return evaluate_circuit(doc.circuit, field, pt); }, hs);
    if (verdict.zero) {
        std::cout << "ZERO\n";
    } else {
        std::cout << "NONZERO at=";
        for (std::size_t i = 0; i < verdict.witness_point.size(); ++i) {
            if (i) std::cout << ",";
            std::cout << verdict.witness_point[i];
        }
        std::cout << " value=" << verdict.witness_value << "\n";
    }
    return 0;
}

int cmd_reconstruct(const std::vector<std::string>& args) {
    if (args.empty()) usage_error("reconstruct needs a circuit file");
    std::string path = args[0];
    std::string out_path;
    std::string verify = "expand";
    MultiOptions options;
    options.jobs = jobs_from_env();
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--out" && i + 1 < args.size()) {
            out_path = args[++i];
        } else if (args[i] == "--verify" && i + 1 < args.size()) {
            verify = args[++i];
        } else if (args[i] == "--fast") {
            options.fast = true;
        } else if (args[i] == "--jobs" && i + 1 < args.size()) {
            int v = std::atoi(args[++i].c_str());
            if (v < 1) usage_error("--jobs needs a positive integer");
            options.jobs = static_cast<unsigned>(v);
        } else {
            usage_error("unknown reconstruct argument '" + args[i] + "'");
        }
    }
    CircuitDoc doc = parse_circuit(read_file(path));
    PrimeField field(doc.p);
    OracleHandle oracle = OracleHandle::for_circuit(field, doc.circuit);

    if (options.fast)
        std::cerr << "note: fast profile uses reduced set sizes outside the construction constants\n";

    MultiStats stats;
    PowCircuitMulti recovered = reconstruct_multivariate(
        [&](std::span<const u64> pt) { return oracle.eval(pt); }, field, doc.n, doc.effective_r(),
        doc.effective_s(), doc.effective_delta(), doc.d, options, &stats);

    if (verify == "expand") {
        if (!(recovered.expand(field) == doc.circuit.expand(field)))
            fail(errc::reconstruction_failure, "verification by expansion failed");
    } else if (verify.rfind("sample:", 0) == 0) {
        u64 count = std::strtoull(verify.c_str() + 7, nullptr, 10);
        if (count == 0) usage_error("--verify sample:<k> needs k >= 1");
        SplitMix64 rng(0x5eedu);
        std::vector<u64> pt(doc.n);
        for (u64 k = 0; k < count; ++k) {
            for (auto& c : pt) c = rng.below(field.p());
            if (evaluate_circuit(recovered, field, pt) != evaluate_circuit(doc.circuit, field, pt))
                fail(errc::reconstruction_failure, "verification by sampling failed");
        }
    } else {
        usage_error("--verify must be expand or sample:<k>");
    }

    if (!out_path.empty()) {
        CircuitDoc out_doc;
        out_doc.p = doc.p;
        out_doc.n = doc.n;
        out_doc.d = doc.d;
        out_doc.circuit = recovered;
        u64 measured_s = 1, measured_delta = 1;
        for (const auto& t : recovered.terms) {
            measured_s = std::max<u64>(measured_s, t.base.sparsity());
            measured_delta = std::max<u64>(measured_delta, static_cast<u64>(std::max<i64>(t.base.degree(), 1)));
        }
        out_doc.r = recovered.terms.size();
        out_doc.s = measured_s;
        out_doc.delta = measured_delta;
        write_file(out_path, serialize_circuit(out_doc));
    }
    std::cout << "OK terms=" << recovered.terms.size() << " oracle_calls=" << oracle.calls() << "\n";
    return 0;
}

int cmd_hitting_set(const std::vector<std::string>& args) {
    u64 n = 0, r = 0, s = 0, d = 0, delta = 0, p = 0;
    Rat eps(1, 2);
    std::string out_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        auto need_value = [&](const char* flag) -> std::string {
            if (i + 1 >= args.size()) usage_error(std::string(flag) + " needs a value");
            return args[++i];
        };
        if (args[i] == "--n") n = std::strtoull(need_value("--n").c_str(), nullptr, 10);
        else if (args[i] == "--r") r = std::strtoull(need_value("--r").c_str(), nullptr, 10);
        else if (args[i] == "--s") s = std::strtoull(need_value("--s").c_str(), nullptr, 10);
        else if (args[i] == "--d") d = std::strtoull(need_value("--d").c_str(), nullptr, 10);
        else if (args[i] == "--delta") delta = std::strtoull(need_value("--delta").c_str(), nullptr, 10);
        else if (args[i] == "--p") p = std::strtoull(need_value("--p").c_str(), nullptr, 10);
        else if (args[i] == "--eps") eps = parse_eps(need_value("--eps"));
        else if (args[i] == "--out") out_path = need_value("--out");
        else usage_error("unknown hitting-set argument '" + args[i] + "'");
    }
    if (n < 1 || r < 1 || s < 1 || d < 1 || delta < 1 || out_path.empty())
        usage_error("hitting-set needs --n --r --s --d --delta --out");

    if (p == 0) {
        // Choose the smallest workable prime: the construction needs
        // p >= r*d*delta*(s^2*n + delta) and p > m_k abscissae.
        if ((r - 1) * (r - 1) > d + 1)
            fail(errc::unsupported, "hypothesis (r-1)^2 <= d+1 violated: (" + std::to_string(r) +
                                        "-1)^2 > " + std::to_string(d + 1));
        u64 q = find_prime_in_range(r * r * s * s * n + delta + 1, 2 * r * r * s * s * n + 2 * delta);
        u64 mk = ceil_div_rat(delta * q * d, eps.half());
        u64 lower = std::max<u64>({3, mk + 1, r * d * delta * (s * s * n + delta)});
        p = find_prime_in_range(lower, 2 * lower);
    }
    PrimeField field(p);
    HittingSetSpec hs =
        build_hitting_set(field, static_cast<std::uint32_t>(n), r, s, d, delta, eps);
    write_file(out_path, serialize_hitting_set(hs));
    std::cout << "OK points=" << hs.size() << " p=" << field.p() << " q=" << hs.q()
              << " t=" << hs.t() << " mk=" << hs.mk() << "\n";
    return 0;
}

// ---- selftest ----------------------------------------------------------

int failures = 0;

void report(const char* name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
}

void selftest_field() {
    PrimeField f(101);
    bool ok = true;
    for (u64 a = 1; a < 101; ++a) ok = ok && f.mul(a, f.inv(a)) == 1;
    for (u64 a = 1; a < 101; ++a) ok = ok && (100 % element_order(f, a)) == 0;
    for (u64 m = 1; m <= 300; ++m) ok = ok && find_prime_in_range(m + 1, 2 * m) > m;
    report("field: inverses, orders, Bertrand windows", ok);
}

void selftest_poly() {
    PrimeField f(101);
    SplitMix64 rng(7);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<u64> ca(1 + rng.below(5)), cb(1 + rng.below(5));
        for (auto& c : ca) c = rng.below(101);
        for (auto& c : cb) c = rng.below(101);
        UniPoly a(f, ca), b(f, cb);
        ok = ok && (a * b).derivative() == a.derivative() * b + a * b.derivative();
    }
    report("poly: Leibniz product rule", ok);
}

void selftest_factor() {
    PrimeField f(101);
    SplitMix64 rng(11);
    bool ok = true;
    for (int trial = 0; trial < 25; ++trial) {
        UniPoly g = UniPoly::constant(f, 1 + static_cast<i64>(rng.below(100)));
        int parts = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i < parts; ++i) {
            UniPoly lin(f, {rng.below(101), 1});
            g = g * lin.pow(1 + rng.below(3));
        }
        ok = ok && factor_univariate(g).product(f) == g;
    }
    report("factor: product round-trip", ok);
}

void selftest_wronskian() {
    PrimeField f(101);
    bool ok = wronskian(std::vector<UniPoly>{UniPoly::monomial(f, 1, 2), UniPoly::monomial(f, 1, 3)}) ==
              UniPoly::monomial(f, 1, 4);
    UniPoly x = UniPoly::x(f);
    ok = ok && wronskian(std::vector<UniPoly>{x, x}).is_zero();
    report("wronskian: determinant identities", ok);
}

void selftest_reconstruct() {
    PrimeField f(331);
    UniPoly x = UniPoly::x(f);
    UniPoly xp1 = x + UniPoly::constant(f, 1);
    UniPoly input = x.pow(82).scaled(2) + xp1.pow(82).scaled(3);
    PowCircuitUni rec = reconstruct_univariate(input, 2, 82, 1);
    bool ok = rec.terms.size() == 2 && rec.terms[0].alpha == 2 && rec.terms[0].base == x &&
              rec.terms[1].alpha == 3 && rec.terms[1].base == xp1;
    report("reconstruct: univariate two-power round-trip", ok);
}

void selftest_robust() {
    PrimeField f(101);
    RobustSet set = build_robust_set(f, 1, 1, 1, Rat(1, 2));
    SparsePoly poly(f, 1);
    ExponentVector e;
    e.e = {1};
    poly.add_term(e, 7);
    std::map<PointTag, u64> evals;
    for (std::size_t i = 0; i < set.size(); ++i) {
        PointTag t = set.tag(i);
        evals.emplace(t, poly.eval(set.coords(t)));
    }
    report("robust set: decode round-trip", robust_decode(set, evals) == poly);
}

int cmd_selftest() {
    selftest_field();
    selftest_poly();
    selftest_factor();
    selftest_wronskian();
    selftest_reconstruct();
    selftest_robust();
    if (failures > 0) {
        std::cerr << failures << " selftest group(s) failed\n";
        return 1;
    }
    std::cout << "selftest passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) usage_error("missing command");
    std::string cmd = args[0];
    args.erase(args.begin());
    try {
        if (cmd == "pit") return cmd_pit(args);
        if (cmd == "reconstruct") return cmd_reconstruct(args);
        if (cmd == "hitting-set") return cmd_hitting_set(args);
        if (cmd == "selftest") return cmd_selftest();
        usage_error("unknown command '" + cmd + "'");
    } catch (const error& e) {
        std::cerr << "powcirc: " << e.what() << "\n";
        switch (e.code()) {
            case errc::unsupported:
            case errc::infeasible:
                return 3;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "powcirc: " << e.what() << "\n";
        return 1;
    }
}
