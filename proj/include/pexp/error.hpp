#ifndef PEXP_ERROR_HPP
#define PEXP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pexp {

/* Base class for all engine errors. Subclasses split into three groups:
 * domain errors (bad input for the requested operation), resource errors
 * (a configured cap was hit; raising the cap may succeed), and certified
 * "don't know" (Undecided / PrecisionExhausted: no answer was produced,
 * but no wrong answer either). */
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* --- domain errors --- */

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct NotInDomain : Error {
    explicit NotInDomain(const std::string& what_elem)
        : Error("element not in domain: " + what_elem) {}
};

struct ZeroKernelGenerator : Error {
    ZeroKernelGenerator() : Error("kernel generator omega must be nonzero") {}
};

struct PoleOrZeroAtPoint : Error {
    explicit PoleOrZeroAtPoint(const std::string& where)
        : Error("pole or multiplicative-zero at point: " + where) {}
};

/* A freeness precondition failed; carries the side and the violating
 * relation rendered as text (the exact data is also available where the
 * check is run). */
struct NotFree : Error {
    std::string side;      // "additive" or "multiplicative"
    std::string relation;  // human-readable violating combination
    NotFree(std::string side_, std::string relation_)
        : Error("variety not " + side_ + "ly free: " + relation_),
          side(std::move(side_)), relation(std::move(relation_)) {}
};

struct CandidateStreamExhausted : Error {
    CandidateStreamExhausted() : Error("candidate stream exhausted") {}
};

struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& limits)
        : Error("witness search exhausted: " + limits) {}
};

struct FormatError : Error {
    long line;
    FormatError(long line_, const std::string& msg)
        : Error("format error at line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

struct CertificationError : Error {
    explicit CertificationError(const std::string& msg)
        : Error("certification failed: " + msg) {}
};

/* --- resource errors --- */

struct FactorizationOverflow : Error {
    explicit FactorizationOverflow(const std::string& what_int)
        : Error("integer exceeds factorization bound: " + what_int) {}
};

struct FieldDegreeOverflow : Error {
    explicit FieldDegreeOverflow(long degree)
        : Error("composite field degree " + std::to_string(degree) +
                " exceeds configured cap") {}
};

/* --- certified don't-know --- */

struct PrecisionExhausted : Error {
    long precision_bits;
    explicit PrecisionExhausted(long bits)
        : Error("cannot certify at maximum precision (" +
                std::to_string(bits) + " bits)"),
          precision_bits(bits) {}
};

/* An independence question could not be decided either way; carries the
 * precision at which the rank certificate gave up, so retries after a
 * config change are deterministic. */
struct Undecided : Error {
    long precision_bits;
    explicit Undecided(long bits)
        : Error("independence undecided at precision " +
                std::to_string(bits) + " bits"),
          precision_bits(bits) {}
};

} // namespace pexp

#endif
