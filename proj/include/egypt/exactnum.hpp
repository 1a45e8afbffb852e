#pragma once

// Exact integer / rational layer. GMP does the arithmetic; this header adds
// the divisor-theoretic helpers the rest of the library leans on.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace egypt {

using Natural = mpz_class;  // held non-negative by construction
using Ratio = mpq_class;    // kept canonical (reduced, positive denominator)

// ---- errors ----------------------------------------------------------------

class error : public std::runtime_error {
public:
    error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct invalid_argument : error {
    explicit invalid_argument(const std::string& msg) : error("InvalidArgument", msg) {}
};

struct zero_denominator : error {
    explicit zero_denominator(const std::string& msg) : error("ZeroDenominator", msg) {}
};

struct parse_error : error {
    parse_error(const std::string& msg, std::size_t pos)
        : error("ParseError", msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// ---- conversions -----------------------------------------------------------

inline std::string dec(const Natural& n) { return n.get_str(); }

// canonical record form, always "num/den"
inline std::string frac(const Ratio& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// natural display form ("24", "832/385")
inline std::string pretty(const Ratio& q) { return q.get_str(); }

inline Natural parse_natural(const std::string& s, std::size_t base_pos = 0) {
    if (s.empty()) throw parse_error("empty integer", base_pos);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw parse_error("invalid digit '" + std::string(1, s[i]) + "'", base_pos + i);
    if (s.size() > 1 && s[0] == '0') throw parse_error("leading zero", base_pos);
    return Natural(s);
}

inline Ratio make_ratio(const Natural& num, const Natural& den) {
    if (den == 0) throw zero_denominator("denominator is zero");
    Ratio q(num, den);
    q.canonicalize();
    return q;
}

// accepts "a/b" or "a"
inline Ratio parse_ratio(const std::string& s, std::size_t base_pos = 0) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Ratio(parse_natural(s, base_pos));
    Natural num = parse_natural(s.substr(0, slash), base_pos);
    Natural den = parse_natural(s.substr(slash + 1), base_pos + slash + 1);
    if (den == 0) throw zero_denominator("denominator is zero");
    return make_ratio(num, den);
}

// ---- small primes ----------------------------------------------------------

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t LIMIT = 1u << 16;
        std::vector<bool> comp(LIMIT, false);
        std::vector<std::uint32_t> ps;
        for (std::uint32_t i = 2; i < LIMIT; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < LIMIT; j += i) comp[j] = true;
        }
        return ps;
    }();
    return primes;
}

inline bool is_probable_prime(const Natural& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

}  // namespace detail

// ---- factorization ---------------------------------------------------------

struct PrimePower {
    Natural prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

// trial division: sieve primes first, then a 6k±1 wheel; a primality check on
// the remainder cuts the wheel short once nothing composite can be left
inline std::vector<PrimePower> factorize(Natural n) {
    if (n == 0) throw invalid_argument("factorize(0)");
    std::vector<PrimePower> out;
    auto take = [&](const Natural& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    };
    for (std::uint32_t p : detail::small_primes()) {
        if (Natural(p) * p > n) break;
        take(Natural(p));
    }
    if (n > 1) {
        unsigned power = 1;  // collapse perfect powers so the wheel walks the root
        while (!detail::is_probable_prime(n) && mpz_perfect_power_p(n.get_mpz_t())) {
            for (unsigned e = 2; e < 64; ++e) {
                Natural root;
                if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                    n = root;
                    power *= e;
                    break;
                }
            }
        }
        if (!detail::is_probable_prime(n)) {
            Natural d = (1 << 16) + 1;  // past the sieve; continue on the 6k±1 wheel
            while (d % 6 != 1 && d % 6 != 5) ++d;
            int step = (d % 6 == 1) ? 4 : 2;
            while (d * d <= n) {
                unsigned e = 0;
                while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
                    n /= d;
                    ++e;
                }
                if (e) out.push_back({d, e * power});
                if (n == 1 || detail::is_probable_prime(n)) break;
                d += step;
                step = 6 - step;
            }
        }
        if (n > 1) out.push_back({n, power});
    }
    std::sort(out.begin(), out.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    return out;
}

// ascending
inline std::vector<Natural> divisors(const Natural& n) {
    if (n == 0) throw invalid_argument("divisors(0)");
    std::vector<Natural> out{1};
    for (const auto& [p, e] : factorize(n)) {
        std::size_t base = out.size();
        Natural pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// sigma(s, n) for s in {-1, 0, 1}, exact
inline Ratio sigma(int s, const Natural& n) {
    if (s < -1 || s > 1) throw invalid_argument("sigma: s must be -1, 0 or 1");
    if (n == 0) throw invalid_argument("sigma(s, 0)");
    Natural acc = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (s == 0) {
            acc *= e + 1;
        } else {
            Natural pk = 1, sum = 1;
            for (unsigned i = 0; i < e; ++i) {
                pk *= p;
                sum += pk;
            }
            acc *= sum;
        }
    }
    if (s == -1) return make_ratio(acc, n);  // sigma_{-1} = sigma_1(n)/n
    return Ratio(acc);
}

inline std::pair<Natural, Natural> gcd_lcm(const std::vector<Natural>& xs) {
    if (xs.empty()) throw invalid_argument("gcd_lcm of empty list");
    Natural g = 0, l = 1;
    for (const auto& x : xs) {
        if (x == 0) throw invalid_argument("gcd_lcm: zero element");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_mpz_t());
    }
    return {g, l};
}

}  // namespace egypt
