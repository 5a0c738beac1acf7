#include "powcirc/circuit.hpp"

#include <algorithm>
#include <charconv>

namespace powcirc {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t line = 0;

    std::optional<std::string_view> next_line() {
        while (!text.empty()) {
            std::size_t eol = text.find('\n');
            std::string_view raw = eol == std::string_view::npos ? text : text.substr(0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
            ++line;
            std::size_t start = raw.find_first_not_of(" \t\r");
            if (start == std::string_view::npos) continue;
            std::size_t stop = raw.find_last_not_of(" \t\r");
            raw = raw.substr(start, stop - start + 1);
            if (raw.empty() || raw[0] == '#') continue;
            return raw;
        }
        return std::nullopt;
    }
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    fail(errc::parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

i64 parse_int(std::string_view s, std::size_t line, const char* what) {
    i64 value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        parse_fail(line, std::string("invalid integer for ") + what + ": '" + std::string(s) + "'");
    return value;
}

// key=value field of a record line.
std::string_view expect_kv(std::string_view token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
        token[key.size()] != '=')
        parse_fail(line, "expected " + std::string(key) + "=<value>, got '" + std::string(token) + "'");
    return token.substr(key.size() + 1);
}

// <int>[*x<i>[^<e>]]* — one monomial of a term polynomial.
void parse_monomial(std::string_view s, std::size_t line, const PrimeField& f, SparsePoly& poly) {
    std::size_t pos = 0;
    auto take_until_star = [&]() {
        std::size_t star = s.find('*', pos);
        std::string_view piece =
            star == std::string_view::npos ? s.substr(pos) : s.substr(pos, star - pos);
        pos = star == std::string_view::npos ? s.size() : star + 1;
        return piece;
    };
    std::string_view coeff_piece = take_until_star();
    if (coeff_piece.empty()) parse_fail(line, "empty monomial");
    i64 coeff = parse_int(coeff_piece, line, "monomial coefficient");
    ExponentVector e;
    e.e.assign(poly.nvars(), 0);
    while (pos < s.size()) {
        std::string_view factor = take_until_star();
        if (factor.size() < 2 || factor[0] != 'x')
            parse_fail(line, "expected x<i>[^<e>], got '" + std::string(factor) + "'");
        std::size_t caret = factor.find('^');
        std::string_view index_piece =
            caret == std::string_view::npos ? factor.substr(1) : factor.substr(1, caret - 1);
        i64 index = parse_int(index_piece, line, "variable index");
        if (index < 1 || index > static_cast<i64>(poly.nvars()))
            parse_fail(line, "variable index out of range: x" + std::to_string(index));
        i64 exp = 1;
        if (caret != std::string_view::npos)
            exp = parse_int(factor.substr(caret + 1), line, "exponent");
        if (exp < 0) parse_fail(line, "negative exponent");
        e.e[static_cast<std::size_t>(index - 1)] += static_cast<std::uint32_t>(exp);
    }
    poly.add_term(e, coeff);
    (void)f;
}

SparsePoly parse_poly(std::string_view s, std::size_t line, const PrimeField& f, std::uint32_t n) {
    SparsePoly poly(f, n);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t plus = s.find('+', pos);
        std::string_view mono =
            plus == std::string_view::npos ? s.substr(pos) : s.substr(pos, plus - pos);
        parse_monomial(mono, line, f, poly);
        if (plus == std::string_view::npos) break;
        pos = plus + 1;
    }
    return poly;
}

}  // namespace

u64 CircuitDoc::effective_r() const { return r ? *r : std::max<u64>(circuit.terms.size(), 1); }

u64 CircuitDoc::effective_s() const {
    u64 measured = 1;
    for (const auto& t : circuit.terms) measured = std::max<u64>(measured, t.base.sparsity());
    return s ? *s : measured;
}

u64 CircuitDoc::effective_delta() const {
    u64 measured = 1;
    for (const auto& t : circuit.terms)
        measured = std::max<u64>(measured, static_cast<u64>(std::max<i64>(t.base.degree(), 1)));
    return delta ? *delta : measured;
}

CircuitDoc parse_circuit(std::string_view text) {
    Cursor cur{text};

    auto field_line = cur.next_line();
    if (!field_line) parse_fail(cur.line, "missing 'field' line");
    {
        auto toks = split_ws(*field_line);
        if (toks.size() != 2 || toks[0] != "field") parse_fail(cur.line, "expected 'field p=<int>'");
        i64 p = parse_int(expect_kv(toks[1], "p", cur.line), cur.line, "p");
        if (p < 3) parse_fail(cur.line, "p must be an odd prime >= 3");
        CircuitDoc doc;
        doc.p = static_cast<u64>(p);

        auto params_line = cur.next_line();
        if (!params_line) parse_fail(cur.line, "missing 'params' line");
        auto ptoks = split_ws(*params_line);
        if (ptoks.size() < 3 || ptoks[0] != "params")
            parse_fail(cur.line, "expected 'params n=<int> d=<int> [r=] [s=] [delta=]'");
        doc.n = static_cast<std::uint32_t>(parse_int(expect_kv(ptoks[1], "n", cur.line), cur.line, "n"));
        doc.d = static_cast<u64>(parse_int(expect_kv(ptoks[2], "d", cur.line), cur.line, "d"));
        if (doc.n < 1 || doc.d < 1) parse_fail(cur.line, "params need n >= 1 and d >= 1");
        for (std::size_t i = 3; i < ptoks.size(); ++i) {
            std::string_view tok = ptoks[i];
            if (tok.substr(0, 2) == "r=")
                doc.r = static_cast<u64>(parse_int(tok.substr(2), cur.line, "r"));
            else if (tok.substr(0, 2) == "s=")
                doc.s = static_cast<u64>(parse_int(tok.substr(2), cur.line, "s"));
            else if (tok.substr(0, 6) == "delta=")
                doc.delta = static_cast<u64>(parse_int(tok.substr(6), cur.line, "delta"));
            else
                parse_fail(cur.line, "unknown params token '" + std::string(tok) + "'");
        }

        PrimeField f(doc.p);  // errc::parameter if composite
        doc.circuit.n = doc.n;
        doc.circuit.d = doc.d;

        while (auto line = cur.next_line()) {
            auto ttoks = split_ws(*line);
            if (ttoks.size() != 3 || ttoks[0] != "term")
                parse_fail(cur.line, "expected 'term coeff=<int> poly=<sum>'");
            i64 coeff = parse_int(expect_kv(ttoks[1], "coeff", cur.line), cur.line, "coeff");
            u64 lambda = f.reduce(coeff);
            if (lambda == 0)
                fail(errc::circuit_zero_coeff,
                     "line " + std::to_string(cur.line) + ": term coefficient is 0 mod p");
            SparsePoly base = parse_poly(expect_kv(ttoks[2], "poly", cur.line), cur.line, f, doc.n);
            if (base.is_zero())
                fail(errc::circuit_zero_coeff,
                     "line " + std::to_string(cur.line) + ": term base is the zero polynomial");
            doc.circuit.terms.push_back({lambda, std::move(base)});
        }

        // Semantic checks against declared bounds.
        if (doc.r && doc.circuit.terms.size() > *doc.r)
            fail(errc::circuit_terms_bound, "more terms than the declared bound r");
        for (const auto& t : doc.circuit.terms) {
            if (doc.delta && t.base.degree() > static_cast<i64>(*doc.delta))
                fail(errc::circuit_degree_bound, "term degree exceeds the declared delta");
            if (doc.s && t.base.sparsity() > *doc.s)
                fail(errc::circuit_sparsity_bound, "term sparsity exceeds the declared s");
        }
        for (std::size_t i = 0; i < doc.circuit.terms.size(); ++i) {
            for (std::size_t j = i + 1; j < doc.circuit.terms.size(); ++j) {
                if (doc.circuit.terms[i].base.is_associate_of(doc.circuit.terms[j].base))
                    fail(errc::circuit_associate_bases,
                         "terms " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                             " have associate bases");
            }
        }
        return doc;
    }
}

std::string serialize_circuit(const CircuitDoc& doc) {
    std::string out = "field p=" + std::to_string(doc.p) + "\n";
    out += "params n=" + std::to_string(doc.n) + " d=" + std::to_string(doc.d);
    if (doc.r) out += " r=" + std::to_string(*doc.r);
    if (doc.s) out += " s=" + std::to_string(*doc.s);
    if (doc.delta) out += " delta=" + std::to_string(*doc.delta);
    out += "\n";
    std::vector<const PowerTermMulti*> terms;
    for (const auto& t : doc.circuit.terms) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](const PowerTermMulti* a, const PowerTermMulti* b) {
        return compare_canonical(a->base, b->base) < 0;
    });
    for (const PowerTermMulti* t : terms) {
        out += "term coeff=" + std::to_string(t->lambda) + " poly=" + t->base.str() + "\n";
    }
    return out;
}

u64 evaluate_circuit(const PowCircuitMulti& circuit, const PrimeField& f, std::span<const u64> point) {
    if (point.size() != circuit.n) fail(errc::dimension_mismatch, "evaluation point has wrong length");
    u64 acc = 0;
    for (const auto& t : circuit.terms) {
        acc = f.add(acc, f.mul(t.lambda, f.pow(t.base.eval(point), circuit.d)));
    }
    return acc;
}

OracleHandle OracleHandle::for_circuit(const PrimeField& f, const PowCircuitMulti& circuit) {
    return OracleHandle(f, circuit.n, [&f, &circuit](std::span<const u64> pt) {
        return evaluate_circuit(circuit, f, pt);
    });
}

}  // namespace powcirc
