#include <map>
#include <mutex>

#include "qh/scalar.hpp"

namespace qh {

namespace {

// Dense polynomial over Q, lowest degree first, no trailing zeros.
using Poly = std::vector<Rat>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division p / q; the remainder must vanish.
Poly divide_exact(Poly p, const Poly& q) {
    Poly out(p.size() >= q.size() ? p.size() - q.size() + 1 : 0, Rat(0));
    while (p.size() >= q.size() && !p.empty()) {
        Rat c = p.back() / q.back();
        size_t shift = p.size() - q.size();
        out[shift] = c;
        for (size_t i = 0; i < q.size(); ++i) p[shift + i] -= c * q[i];
        trim(p);
    }
    if (!p.empty()) throw Error("cyclotomic polynomial division left a remainder");
    return out;
}

Poly x_pow_minus_one(long n) {
    Poly p(n + 1, Rat(0));
    p[0] = -1;
    p[n] = 1;
    return p;
}

Poly cyclotomic(long n, std::map<long, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly p = x_pow_minus_one(n);
    for (long d = 1; d < n; ++d) {
        if (n % d == 0) p = divide_exact(std::move(p), cyclotomic(d, memo));
    }
    memo[n] = p;
    return p;
}

}  // namespace

Field::Field(long n, std::vector<Rat> minpoly)
    : n_(n), degree_(static_cast<long>(minpoly.size()) - 1), minpoly_(std::move(minpoly)) {}

FieldPtr Field::make(long n) {
    if (n < 1) throw BadParameters("cyclotomic order must be >= 1");
    static std::mutex mu;
    static std::map<long, FieldPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::map<long, Poly> memo;
    Poly mp = cyclotomic(n, memo);
    FieldPtr f(new Field(n, std::move(mp)));
    cache[n] = f;
    return f;
}

}  // namespace qh
