#include "mspectra/field.hpp"

#include <cstdlib>

namespace mspectra {

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Modular inverse by extended Euclid; m prime, 0 < a < m.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(m), new_r = static_cast<long long>(a);
    while (new_r != 0) {
        long long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw InternalError("mod_inverse: not invertible");
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<std::uint64_t>(t);
}

}  // namespace

Field Field::prime(std::uint64_t p) {
    if (p >= (1ull << 31)) throw InputError("prime modulus too large (need p < 2^31)");
    if (!is_prime(p)) throw InputError("field modulus " + std::to_string(p) + " is not prime");
    return Field(Kind::Prime, p);
}

Field Field::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.rfind("Fp:", 0) == 0) {
        const std::string num = text.substr(3);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("bad field descriptor: " + text);
        return prime(std::strtoull(num.c_str(), nullptr, 10));
    }
    throw InputError("bad field descriptor: " + text + " (expected \"Q\" or \"Fp:<p>\")");
}

std::string Field::to_string() const {
    return is_rationals() ? "Q" : "Fp:" + std::to_string(p_);
}

Scalar Field::zero() const {
    return is_rationals() ? Scalar::rational(mpq_class(0)) : Scalar::residue(0);
}

Scalar Field::one() const {
    return is_rationals() ? Scalar::rational(mpq_class(1)) : Scalar::residue(1 % p_);
}

Scalar Field::from_int(long long n) const {
    if (is_rationals()) return Scalar::rational(mpq_class(static_cast<long>(n)));
    long long m = n % static_cast<long long>(p_);
    if (m < 0) m += static_cast<long long>(p_);
    return Scalar::residue(static_cast<std::uint64_t>(m));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (is_rationals()) return Scalar::rational(a.rat() + b.rat());
    std::uint64_t s = a.res() + b.res();
    if (s >= p_) s -= p_;
    return Scalar::residue(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (is_rationals()) return Scalar::rational(a.rat() - b.rat());
    std::uint64_t s = a.res() + p_ - b.res();
    if (s >= p_) s -= p_;
    return Scalar::residue(s);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (is_rationals()) return Scalar::rational(a.rat() * b.rat());
    return Scalar::residue((a.res() * b.res()) % p_);
}

Scalar Field::neg(const Scalar& a) const {
    if (is_rationals()) return Scalar::rational(-a.rat());
    return a.res() == 0 ? a : Scalar::residue(p_ - a.res());
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw InputError("division by zero");
    if (is_rationals()) return Scalar::rational(1 / a.rat());
    return Scalar::residue(mod_inverse(a.res(), p_));
}

bool Field::is_zero(const Scalar& a) const {
    return is_rationals() ? a.rat() == 0 : a.res() == 0;
}

bool Field::is_one(const Scalar& a) const {
    return is_rationals() ? a.rat() == 1 : a.res() == 1 % p_;
}

Scalar Field::parse_scalar(const std::string& text) const {
    if (text.empty()) throw InputError("empty scalar");
    if (is_rationals()) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw InputError("bad rational: " + text);
        q.canonicalize();
        if (q.get_den() == 0) throw InputError("zero denominator: " + text);
        return Scalar::rational(std::move(q));
    }
    std::size_t pos = text[0] == '-' ? 1 : 0;
    if (pos == text.size() || text.find_first_not_of("0123456789", pos) != std::string::npos)
        throw InputError("bad prime-field element: " + text);
    mpz_class z(text, 10);
    mpz_class m = z % static_cast<unsigned long>(p_);
    if (m < 0) m += static_cast<unsigned long>(p_);
    return Scalar::residue(m.get_ui());
}

std::string Field::scalar_to_string(const Scalar& a) const {
    if (is_rationals()) return a.rat().get_str();
    return std::to_string(a.res());
}

}  // namespace mspectra
