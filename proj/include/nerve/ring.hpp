#pragma once

#include "nerve/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nerve {

using BigInt = boost::multiprecision::cpp_int;

/// Coefficient ring for cohomology: Z, Q or F_p.
class RingSpec {
public:
    enum class Kind { Integers, Rationals, PrimeField };

    static RingSpec integers() { return RingSpec(Kind::Integers, 0); }
    static RingSpec rationals() { return RingSpec(Kind::Rationals, 0); }
    static RingSpec prime_field(std::int64_t p)
    {
        if (!is_prime(p))
            throw Error(ErrorCode::InvalidRing, std::to_string(p) + " is not prime");
        if (p > (std::int64_t{1} << 31))
            throw Error(ErrorCode::InvalidRing, "prime " + std::to_string(p) + " exceeds 2^31");
        return RingSpec(Kind::PrimeField, p);
    }

    /// Parses the selector syntax z | q | fp:<prime>.
    static RingSpec parse(const std::string& s)
    {
        if (s == "z" || s == "Z")
            return integers();
        if (s == "q" || s == "Q")
            return rationals();
        if (s.rfind("fp:", 0) == 0) {
            std::size_t used = 0;
            long long p = 0;
            try {
                p = std::stoll(s.substr(3), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != s.size() - 3)
                throw Error(ErrorCode::InvalidRing, "cannot parse prime in '" + s + "'");
            return prime_field(p);
        }
        throw Error(ErrorCode::InvalidRing, "unknown coefficient ring '" + s + "' (expected z, q or fp:<prime>)");
    }

    Kind kind() const noexcept { return kind_; }
    std::int64_t characteristic() const noexcept { return p_; }
    bool is_integers() const noexcept { return kind_ == Kind::Integers; }
    bool is_field() const noexcept { return kind_ != Kind::Integers; }

    /// True when n is a unit of the ring (n != 0 for Q; p does not divide n for F_p).
    bool inverts(std::int64_t n) const noexcept
    {
        switch (kind_) {
        case Kind::Integers: return n == 1 || n == -1;
        case Kind::Rationals: return n != 0;
        case Kind::PrimeField: return n % p_ != 0;
        }
        return false;
    }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::Integers: return "z";
        case Kind::Rationals: return "q";
        case Kind::PrimeField: return "fp:" + std::to_string(p_);
        }
        return "?";
    }

    bool operator==(const RingSpec&) const = default;

    static bool is_prime(std::int64_t n)
    {
        if (n < 2)
            return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

private:
    RingSpec(Kind k, std::int64_t p) : kind_(k), p_(p) {}

    Kind kind_;
    std::int64_t p_;
};

namespace detail {

struct Overflow : std::overflow_error {
    Overflow() : std::overflow_error("int64 overflow") {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow{};
    return r;
}

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t p)
{
    v %= p;
    return v < 0 ? v + p : v;
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p)
{
    std::int64_t r = 1;
    b = mod_reduce(b, p);
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) { return mod_pow(a, p - 2, p); }

} // namespace detail

} // namespace nerve
