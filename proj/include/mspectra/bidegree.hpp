#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace mspectra {

struct Bidegree {
    int p = 0;
    int q = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
    friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }
    friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.p - b.p, a.q - b.q}; }
    std::string to_string() const { return std::to_string(p) + "," + std::to_string(q); }
};

/// Bidegree of the structure map d_i.
constexpr Bidegree diff_degree(int i) { return Bidegree{-i, 1 - i}; }

/// The bidegree involution ((N-2)p-(N-1)q, (N-3)p-(N-2)q); its own inverse.
constexpr Bidegree involution_bidegree(int n, Bidegree x) {
    return Bidegree{(n - 2) * x.p - (n - 1) * x.q, (n - 3) * x.p - (n - 2) * x.q};
}

/// Closed bidegree rectangle [pmin,pmax] x [qmin,qmax].
struct Box {
    int pmin = 0, pmax = -1, qmin = 0, qmax = -1;  // default: empty

    bool empty() const { return pmin > pmax || qmin > qmax; }
    bool contains(Bidegree b) const {
        return b.p >= pmin && b.p <= pmax && b.q >= qmin && b.q <= qmax;
    }
    Box inflated(int t) const { return Box{pmin - t, pmax + t, qmin - t, qmax + t}; }
    void absorb(Bidegree b) {
        if (empty()) {
            pmin = pmax = b.p;
            qmin = qmax = b.q;
        } else {
            pmin = std::min(pmin, b.p);
            pmax = std::max(pmax, b.p);
            qmin = std::min(qmin, b.q);
            qmax = std::max(qmax, b.q);
        }
    }
    void absorb(const Box& o) {
        if (o.empty()) return;
        absorb(Bidegree{o.pmin, o.qmin});
        absorb(Bidegree{o.pmax, o.qmax});
    }
    std::vector<Bidegree> points() const {
        std::vector<Bidegree> v;
        for (int p = pmin; p <= pmax; ++p)
            for (int q = qmin; q <= qmax; ++q) v.push_back(Bidegree{p, q});
        return v;
    }
    friend bool operator==(const Box&, const Box&) = default;
};

}  // namespace mspectra
