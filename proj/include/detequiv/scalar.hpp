#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "detequiv/error.hpp"

namespace detequiv {

enum class FieldKind { Rationals, PrimeField };

/// The field every Scalar of a computation lives in: Q, or GF(p) with p prime.
class FieldSpec {
public:
    /// Largest accepted modulus; residue products must fit in 128 bits.
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 61;

    FieldSpec() = default;

    static FieldSpec rationals() { return FieldSpec{}; }

    /// Throws InvalidField unless `p` is prime and at most kMaxModulus.
    /// GF(2) is refused unless `allow_char2` is set, in which case a warning is printed.
    static FieldSpec prime(std::uint64_t p, bool allow_char2 = false);

    /// Parses "rational" or "gf:<p>" (the CLI spelling).
    static FieldSpec parse(std::string_view text, bool allow_char2 = false);

    FieldKind kind() const noexcept { return kind_; }
    bool is_prime() const noexcept { return kind_ == FieldKind::PrimeField; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    /// "rational" or "gf:<p>".
    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    friend class Scalar;
    FieldSpec(FieldKind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

    FieldKind kind_ = FieldKind::Rationals;
    std::uint64_t modulus_ = 0;
};

bool is_prime_u64(std::uint64_t n);

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept in [0, p). Equal values are therefore
/// represented identically.
class Scalar {
public:
    /// Zero over the rationals.
    Scalar() : value_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& spec) { return from_int(spec, 0); }
    static Scalar one(const FieldSpec& spec) { return from_int(spec, 1); }
    static Scalar from_int(const FieldSpec& spec, std::int64_t v);
    /// num/den over Q, or num * den^{-1} over GF(p).
    static Scalar from_fraction(const FieldSpec& spec, std::int64_t num, std::int64_t den);
    static Scalar from_rational(mpq_class q);
    static Scalar from_residue(std::uint64_t value, std::uint64_t modulus);

    FieldSpec field() const;
    bool is_zero() const;
    bool is_one() const;

    /// Only meaningful over Q.
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }
    /// Only meaningful over GF(p).
    std::uint64_t residue() const { return std::get<Residue>(value_).value; }

    Scalar operator-() const;
    Scalar inverse() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    /// Throws FieldMismatch when the operands live in different fields.
    friend bool operator==(const Scalar& a, const Scalar& b);

private:
    struct Residue {
        std::uint64_t value;
        std::uint64_t modulus;
    };

    explicit Scalar(mpq_class q) : value_(std::move(q)) {}
    explicit Scalar(Residue r) : value_(r) {}

    std::variant<mpq_class, Residue> value_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Binary field operation selected at runtime.
Scalar field_arith(const Scalar& a, const Scalar& b, ArithOp op);

/// Grammar: `[-]digits[/digits]` over Q, `digits` over GF(p).
Scalar parse_scalar(std::string_view text, const FieldSpec& spec);

/// Canonical text; integers print without a slash.
std::string format_scalar(const Scalar& s);

}  // namespace detequiv
