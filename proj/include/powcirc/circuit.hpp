#ifndef POWCIRC_CIRCUIT_HPP
#define POWCIRC_CIRCUIT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "powcirc/reconstruct.hpp"

namespace powcirc {

// Parsed circuit file: field and shape header plus the circuit itself.
// Declared bounds, when present, have been checked against the terms.
struct CircuitDoc {
    u64 p = 3;
    std::uint32_t n = 1;
    u64 d = 1;
    std::optional<u64> r, s, delta;
    PowCircuitMulti circuit;

    // Declared bound when present, measured value otherwise.
    u64 effective_r() const;
    u64 effective_s() const;
    u64 effective_delta() const;
};

// Grammar, one record per line ('#' starts a comment):
//   field p=<int>
//   params n=<int> d=<int> [r=<int>] [s=<int>] [delta=<int>]
//   term coeff=<int> poly=<sum>
// where <sum> is '+'-separated products <int>[*x<i>[^<e>]...].
CircuitDoc parse_circuit(std::string_view text);

// Canonical serialization: terms sorted canonically, monomials in graded-lex
// order, canonical residues everywhere. parse(serialize(doc)) == doc.
std::string serialize_circuit(const CircuitDoc& doc);

u64 evaluate_circuit(const PowCircuitMulti& circuit, const PrimeField& f, std::span<const u64> point);

// Deterministic black-box evaluation contract with a monotone call counter.
class OracleHandle {
  public:
    OracleHandle(const PrimeField& f, std::uint32_t n,
                 std::function<u64(std::span<const u64>)> fn)
        : f_(f), n_(n), fn_(std::move(fn)) {}

    static OracleHandle for_circuit(const PrimeField& f, const PowCircuitMulti& circuit);

    u64 eval(std::span<const u64> point) {
        if (point.size() != n_) fail(errc::dimension_mismatch, "oracle point has wrong length");
        ++calls_;
        return fn_(point) % f_.p();
    }
    u64 calls() const { return calls_; }
    const PrimeField& field() const { return f_; }
    std::uint32_t nvars() const { return n_; }

  private:
    PrimeField f_;
    std::uint32_t n_;
    std::function<u64(std::span<const u64>)> fn_;
    u64 calls_ = 0;
};

}  // namespace powcirc

#endif
