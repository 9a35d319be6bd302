#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

#include <gmpxx.h>

namespace mspectra {

/// Error in user-supplied input (documents, flags, malformed scalars).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated internal invariant; indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// A field element: an arbitrary-precision rational (kept canonical by GMP,
/// lowest terms with positive denominator) or a residue in [0, p).
/// Arithmetic goes through Field so the modulus is always at hand.
class Scalar {
public:
    Scalar() : v_(std::uint64_t{0}) {}
    static Scalar rational(mpq_class q) {
        q.canonicalize();
        return Scalar(std::move(q));
    }
    static Scalar residue(std::uint64_t r) { return Scalar(r); }

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    std::uint64_t res() const { return std::get<std::uint64_t>(v_); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(std::uint64_t r) : v_(r) {}
    std::variant<std::uint64_t, mpq_class> v_;
};

/// The active coefficient field: the rationals or a prime field F_p.
/// Text form: "Q" or "Fp:<p>".
class Field {
public:
    static Field rationals() { return Field(Kind::Rationals, 0); }
    static Field prime(std::uint64_t p);
    static Field parse(const std::string& text);
    std::string to_string() const;

    bool is_rationals() const { return kind_ == Kind::Rationals; }
    std::uint64_t p() const { return p_; }

    friend bool operator==(const Field& a, const Field& b) {
        return a.kind_ == b.kind_ && a.p_ == b.p_;
    }
    friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long n) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;

    Scalar parse_scalar(const std::string& text) const;
    std::string scalar_to_string(const Scalar& a) const;

private:
    enum class Kind { Rationals, Prime };
    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

}  // namespace mspectra
