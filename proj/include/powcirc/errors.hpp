#ifndef POWCIRC_ERRORS_HPP
#define POWCIRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace powcirc {

// Error taxonomy. Codes are stable; the CLI maps them to exit codes.
enum class errc {
    parameter,               // argument outside the documented domain
    domain,                  // mathematically undefined request (0^-1, gcd(0,0), ...)
    not_found,               // search exhausted (no prime in range)
    infeasible,              // provably impossible for this field (order too small)
    unsupported,             // parameters violate a construction hypothesis
    dimension_mismatch,      // point/variable count disagreement
    inconsistent_points,     // interpolation data contradicts the degree bound
    decode_failure,          // no good decoding k
    inconsistent_input,      // evaluations are not those of an in-promise polynomial
    not_in_class,            // oracle is not a sum of <= r d-th powers in the regime
    alignment,               // label multisets disagree across projections
    reconstruction_failure,  // no usable anchor point
    parse,                   // circuit file syntax error
    circuit_zero_coeff,      // term coefficient vanishes mod p
    circuit_degree_bound,    // term degree exceeds declared delta
    circuit_sparsity_bound,  // term sparsity exceeds declared s
    circuit_terms_bound,     // term count exceeds declared r
    circuit_associate_bases, // two term bases are scalar multiples
    internal,                // internal invariant violated (DFS budget, ...)
    io,                      // file system failure
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace powcirc

#endif
