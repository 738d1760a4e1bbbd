#include "detequiv/scalar.hpp"

#include <array>
#include <charconv>
#include <iostream>

namespace detequiv {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::InvalidField: return "InvalidField";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::TooFewVertices: return "TooFewVertices";
        case ErrorCode::LimitExceeded: return "LimitExceeded";
        case ErrorCode::ZeroOffDiagonal: return "ZeroOffDiagonal";
        case ErrorCode::NotACocycle: return "NotACocycle";
        case ErrorCode::ZeroConjugationValue: return "ZeroConjugationValue";
        case ErrorCode::RejectionLimitExceeded: return "RejectionLimitExceeded";
        case ErrorCode::IncompleteReport: return "IncompleteReport";
        case ErrorCode::InvariantBreach: return "InvariantBreach";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Extended Euclid; a must be a unit mod m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

[[noreturn]] void field_mismatch() {
    throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : bases) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set for all 64-bit integers.
    for (auto a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p, bool allow_char2) {
    if (p > kMaxModulus) {
        throw Error(ErrorCode::InvalidField, "modulus " + std::to_string(p) + " exceeds 2^61");
    }
    if (!is_prime_u64(p)) {
        throw Error(ErrorCode::InvalidField, "modulus " + std::to_string(p) + " is not prime");
    }
    if (p == 2) {
        if (!allow_char2) {
            throw Error(ErrorCode::InvalidField,
                        "characteristic 2 is not supported (pass the char-2 override to force it)");
        }
        std::cerr << "warning: GF(2) selected; the recovery pipeline is unvalidated in characteristic 2\n";
    }
    return FieldSpec(FieldKind::PrimeField, p);
}

FieldSpec FieldSpec::parse(std::string_view text, bool allow_char2) {
    if (text == "rational" || text == "q" || text == "Q") return rationals();
    std::string_view digits;
    if (text.starts_with("gf:")) {
        digits = text.substr(3);
    } else if (text.starts_with("gf ")) {
        digits = text.substr(3);
    } else {
        throw Error(ErrorCode::InvalidField, "unknown field '" + std::string(text) + "'");
    }
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw Error(ErrorCode::InvalidField, "bad modulus in '" + std::string(text) + "'");
    }
    return prime(p, allow_char2);
}

std::string FieldSpec::to_string() const {
    if (kind_ == FieldKind::Rationals) return "rational";
    return "gf:" + std::to_string(modulus_);
}

Scalar Scalar::from_int(const FieldSpec& spec, std::int64_t v) {
    if (!spec.is_prime()) return Scalar(mpq_class(mpz_class(static_cast<long>(v))));
    const auto m = spec.modulus();
    auto r = static_cast<std::int64_t>(static_cast<__int128>(v) % static_cast<__int128>(m));
    if (r < 0) r += static_cast<std::int64_t>(m);
    return Scalar(Residue{static_cast<std::uint64_t>(r), m});
}

Scalar Scalar::from_fraction(const FieldSpec& spec, std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
    if (!spec.is_prime()) {
        mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q.canonicalize();
        return Scalar(std::move(q));
    }
    return from_int(spec, num) / from_int(spec, den);
}

Scalar Scalar::from_rational(mpq_class q) {
    if (q.get_den() == 0) throw Error(ErrorCode::ZeroDenominator, "denominator is zero");
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::from_residue(std::uint64_t value, std::uint64_t modulus) {
    return Scalar(Residue{value % modulus, modulus});
}

FieldSpec Scalar::field() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return FieldSpec(FieldKind::PrimeField, r->modulus);
    return FieldSpec::rationals();
}

bool Scalar::is_zero() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const {
    if (const auto* r = std::get_if<Residue>(&value_)) return r->value == 1;
    return std::get<mpq_class>(value_) == 1;
}

Scalar Scalar::operator-() const {
    if (const auto* r = std::get_if<Residue>(&value_)) {
        return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
    }
    return Scalar(mpq_class(-std::get<mpq_class>(value_)));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    if (const auto* r = std::get_if<Residue>(&value_)) {
        return Scalar(Residue{inv_mod(r->value, r->modulus), r->modulus});
    }
    mpq_class q;
    mpq_inv(q.get_mpq_t(), std::get<mpq_class>(value_).get_mpq_t());
    return Scalar(std::move(q));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
    const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
    if (ra && rb) {
        if (ra->modulus != rb->modulus) field_mismatch();
        std::uint64_t s = ra->value + rb->value;
        if (s >= ra->modulus) s -= ra->modulus;
        return Scalar(Scalar::Residue{s, ra->modulus});
    }
    if (ra || rb) field_mismatch();
    return Scalar(mpq_class(std::get<mpq_class>(a.value_) + std::get<mpq_class>(b.value_)));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
    const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
    if (ra && rb) {
        if (ra->modulus != rb->modulus) field_mismatch();
        std::uint64_t s = ra->value >= rb->value ? ra->value - rb->value : ra->value + (ra->modulus - rb->value);
        return Scalar(Scalar::Residue{s, ra->modulus});
    }
    if (ra || rb) field_mismatch();
    return Scalar(mpq_class(std::get<mpq_class>(a.value_) - std::get<mpq_class>(b.value_)));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
    const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
    if (ra && rb) {
        if (ra->modulus != rb->modulus) field_mismatch();
        return Scalar(Scalar::Residue{mul_mod(ra->value, rb->value, ra->modulus), ra->modulus});
    }
    if (ra || rb) field_mismatch();
    return Scalar(mpq_class(std::get<mpq_class>(a.value_) * std::get<mpq_class>(b.value_)));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) field_mismatch();
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
    if (ra) {
        const auto& rb = std::get<Scalar::Residue>(b.value_);
        if (ra->modulus != rb.modulus) field_mismatch();
        return Scalar(Scalar::Residue{mul_mod(ra->value, inv_mod(rb.value, rb.modulus), ra->modulus), ra->modulus});
    }
    return Scalar(mpq_class(std::get<mpq_class>(a.value_) / std::get<mpq_class>(b.value_)));
}

bool operator==(const Scalar& a, const Scalar& b) {
    const auto* ra = std::get_if<Scalar::Residue>(&a.value_);
    const auto* rb = std::get_if<Scalar::Residue>(&b.value_);
    if (ra && rb) {
        if (ra->modulus != rb->modulus) field_mismatch();
        return ra->value == rb->value;
    }
    if (ra || rb) field_mismatch();
    return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
}

Scalar field_arith(const Scalar& a, const Scalar& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw Error(ErrorCode::InvariantBreach, "unknown arithmetic op");
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, const FieldSpec& spec) {
    auto bad = [&](const char* why) {
        return Error(ErrorCode::ParseError, "'" + std::string(text) + "': " + why);
    };
    if (spec.is_prime()) {
        if (!all_digits(text)) throw bad("expected a non-negative integer");
        const auto m = spec.modulus();
        std::uint64_t r = 0;
        for (char c : text) {
            r = static_cast<std::uint64_t>((static_cast<u128>(r) * 10 + static_cast<unsigned>(c - '0')) % m);
        }
        return Scalar::from_residue(r, m);
    }
    std::string_view body = text;
    bool negative = false;
    if (body.starts_with('-')) {
        negative = true;
        body.remove_prefix(1);
    }
    std::string_view num = body;
    std::string_view den = "1";
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num = body.substr(0, slash);
        den = body.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den)) throw bad("expected [-]digits[/digits]");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorCode::ZeroDenominator, "'" + std::string(text) + "' has a zero denominator");
    if (negative) n = -n;
    return Scalar::from_rational(mpq_class(n, d));
}

std::string format_scalar(const Scalar& s) {
    if (s.field().is_prime()) return std::to_string(s.residue());
    const auto& q = s.rational();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace detequiv
