#pragma once

// Elementary symmetric polynomials, trace identities, and the cones
//
//   Lambda_{k,N} = { x in R^N : sigma_{l,N}(x) >= 0 for l = 1..k }
//
// together with the extremal boundary vectors used to refute cone
// membership of Hadamard products.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "garding/errors.hpp"

namespace garding {

/// Default absolute slack applied per sigma level when classifying cone
/// membership of exactly-computed spectra. FD-derived spectra need a wider
/// tolerance; callers scale it.
inline constexpr double kDefaultConeTol = 1e-9;

namespace detail {

inline void require_finite(const std::vector<double>& v, const char* who) {
    for (double x : v) {
        if (!std::isfinite(x)) throw domain_error(std::string(who) + ": non-finite entry");
    }
}

} // namespace detail

/// Ordered real vector of eigenvalues or singular values. Stores both the
/// non-increasing order and the order the values were supplied in, for the
/// cases where position matters (Hadamard multipliers).
class RealSpectrum {
public:
    explicit RealSpectrum(std::vector<double> values) : given_(std::move(values)) {
        if (given_.empty()) throw domain_error("RealSpectrum: empty");
        detail::require_finite(given_, "RealSpectrum");
        sorted_ = given_;
        std::sort(sorted_.begin(), sorted_.end(), std::greater<double>());
    }

    const std::vector<double>& sorted() const noexcept { return sorted_; }
    const std::vector<double>& as_given() const noexcept { return given_; }
    std::size_t size() const noexcept { return given_.size(); }
    double operator[](std::size_t i) const { return sorted_[i]; }

private:
    std::vector<double> given_;
    std::vector<double> sorted_;
};

/// Which cone Lambda_{k,N} a membership query is against, and how much
/// absolute slack each sigma level gets.
struct ConeSpec {
    int k;
    int N;
    double tolerance = kDefaultConeTol;

    ConeSpec(int k_, int N_, double tol = kDefaultConeTol) : k(k_), N(N_), tolerance(tol) {
        if (k < 1 || N < 1 || k > N) throw domain_error("ConeSpec: need 1 <= k <= N");
        if (!(tol >= 0.0)) throw domain_error("ConeSpec: tolerance must be >= 0");
    }
};

inline double binomial(int n, int r) {
    if (r < 0 || r > n) return 0.0;
    r = std::min(r, n - r);
    double acc = 1.0;
    for (int i = 1; i <= r; ++i) acc = acc * double(n - r + i) / double(i);
    return acc;
}

/// All elementary symmetric polynomials sigma_0..sigma_L of x, via the
/// recurrence on the coefficients of prod_j (1 + x_j t).
inline std::vector<double> sigma_all(const std::vector<double>& x) {
    const std::size_t L = x.size();
    std::vector<double> e(L + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t j = 0; j < L; ++j) {
        for (std::size_t d = j + 1; d >= 1; --d) e[d] += x[j] * e[d - 1];
    }
    return e;
}

/// sigma_{k,L}(x), the sum of all k-fold products of distinct coordinates.
inline double sigma(int k, const std::vector<double>& x) {
    if (k < 1 || std::size_t(k) > x.size())
        throw domain_error("sigma: need 1 <= k <= length(x)");
    // Prefix-polynomial recurrence truncated at degree k: O(kL), no subsets.
    std::vector<double> e(std::size_t(k) + 1, 0.0);
    e[0] = 1.0;
    for (double xj : x) {
        for (std::size_t d = std::size_t(k); d >= 1; --d) e[d] += xj * e[d - 1];
    }
    return e[std::size_t(k)];
}

inline double sigma(int k, const RealSpectrum& x) { return sigma(k, x.as_given()); }

/// Closed form for sigma_{l,N}(1,...,1,x): binom(N,l) * (N + l(x-1)) / N.
inline double sigma_pattern(int l, int N, double x) {
    if (l < 1 || N < 1 || l > N) throw domain_error("sigma_pattern: need 1 <= l <= N");
    return binomial(N, l) * (double(N) + double(l) * (x - 1.0)) / double(N);
}

namespace detail {

// Determinant by Gaussian elimination with partial pivoting; n is tiny here.
inline double det_real(std::vector<double> m, int n) {
    double sign = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[std::size_t(r) * n + col]) > std::abs(m[std::size_t(piv) * n + col])) piv = r;
        if (m[std::size_t(piv) * n + col] == 0.0) return 0.0;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(m[std::size_t(piv) * n + c], m[std::size_t(col) * n + c]);
            sign = -sign;
        }
        const double d = m[std::size_t(col) * n + col];
        for (int r = col + 1; r < n; ++r) {
            const double f = m[std::size_t(r) * n + col] / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) m[std::size_t(r) * n + c] -= f * m[std::size_t(col) * n + c];
        }
    }
    double acc = sign;
    for (int i = 0; i < n; ++i) acc *= m[std::size_t(i) * n + i];
    return acc;
}

} // namespace detail

/// sigma_k of the eigenvalues of a matrix from its power traces
/// T_j = tr(A^j), j = 1..k, by the Faddeev-LeVerrier band determinant
/// scaled by 1/k!. For k = 2 this reduces to ((tr A)^2 - tr(A^2)) / 2.
inline double sigma_flv(int k, const std::vector<double>& traces) {
    if (k < 1) throw domain_error("sigma_flv: need k >= 1");
    if (traces.size() < std::size_t(k))
        throw domain_error("sigma_flv: need traces T_1..T_k");
    const int n = k;
    std::vector<double> m(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) m[std::size_t(i) * n + j] = traces[std::size_t(i - j)];
        if (i + 1 < n) m[std::size_t(i) * n + i + 1] = double(k - 1 - i);
    }
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= double(i);
    return detail::det_real(std::move(m), n) / kfact;
}

enum class ConeVerdict { inside, boundary, outside };

inline const char* to_string(ConeVerdict v) {
    switch (v) {
        case ConeVerdict::inside: return "inside";
        case ConeVerdict::boundary: return "boundary";
        case ConeVerdict::outside: return "outside";
    }
    return "?";
}

struct ConeMembership {
    ConeVerdict verdict;
    std::vector<double> sigmas; // sigma_1 .. sigma_k
    double margin;              // min over levels, negative outside
};

/// Classify x against Lambda_{k,N}. Inside means every sigma level clears
/// the tolerance strictly; boundary means none dips below -tolerance and at
/// least one sits within it.
inline ConeMembership cone_member(const std::vector<double>& x, const ConeSpec& cone) {
    if (x.size() != std::size_t(cone.N))
        throw domain_error("cone_member: length(x) != N");
    std::vector<double> e(std::size_t(cone.k) + 1, 0.0);
    e[0] = 1.0;
    for (double xj : x) {
        for (std::size_t d = std::size_t(cone.k); d >= 1; --d) e[d] += xj * e[d - 1];
    }
    std::vector<double> sig(e.begin() + 1, e.end());
    double margin = sig[0];
    bool any_low = false, all_high = true;
    for (double s : sig) {
        margin = std::min(margin, s);
        if (s < -cone.tolerance) any_low = true;
        if (s <= cone.tolerance) all_high = false;
    }
    ConeVerdict v = any_low ? ConeVerdict::outside
                            : (all_high ? ConeVerdict::inside : ConeVerdict::boundary);
    return {v, std::move(sig), margin};
}

inline ConeMembership cone_member(const RealSpectrum& x, const ConeSpec& cone) {
    return cone_member(x.as_given(), cone);
}

/// Componentwise (Hadamard) product.
inline std::vector<double> hadamard(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw domain_error("hadamard: length mismatch");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    return out;
}

/// Append l zeros. Membership in Lambda_{k,N+l} is preserved.
inline std::vector<double> zero_pad(std::vector<double> x, int l) {
    if (l < 0) throw domain_error("zero_pad: negative pad length");
    x.resize(x.size() + std::size_t(l), 0.0);
    return x;
}

struct ExtremalVector {
    std::vector<double> values;
    std::string construction;
};

/// Boundary vectors of Lambda_{k,K} from the refutation constructions:
/// s ones followed by 1-(s+1)/k (sigma_k vanishes identically for s >= k),
/// and the K-1 ones with 1-K/k pattern, with permutations.
struct ExtremalFamily {
    int k;
    int K;
    std::vector<ExtremalVector> vectors;
};

namespace detail {

inline void push_permutations(std::vector<ExtremalVector>& out, std::vector<double> base,
                              const std::string& name, bool full_permutations) {
    std::set<std::vector<double>> seen;
    if (full_permutations) {
        std::sort(base.begin(), base.end());
        do {
            if (seen.insert(base).second) out.push_back({base, name});
        } while (std::next_permutation(base.begin(), base.end()));
        return;
    }
    // Bounded fallback: keep the non-negative entries sorted descending and
    // move the single negative entry through every slot.
    std::sort(base.begin(), base.end(), std::greater<double>());
    const double special = base.back();
    const std::vector<double> rest(base.begin(), base.end() - 1);
    for (std::size_t pos = 0; pos < base.size(); ++pos) {
        std::vector<double> v;
        v.reserve(base.size());
        v.insert(v.end(), rest.begin(), rest.begin() + std::ptrdiff_t(pos));
        v.push_back(special);
        v.insert(v.end(), rest.begin() + std::ptrdiff_t(pos), rest.end());
        if (seen.insert(v).second) out.push_back({v, name});
    }
}

} // namespace detail

/// The finite family of boundary witnesses for Lambda_{k,K}, k < K.
/// Permutations are enumerated fully for K <= 8; beyond that only the
/// placements of the negative entry are generated.
inline ExtremalFamily cone_extremals(int k, int K) {
    if (k < 1) throw domain_error("cone_extremals: need k >= 1");
    if (k >= K) throw domain_error("cone_extremals: need k < K");
    ExtremalFamily fam{k, K, {}};
    const bool full = K <= 8;

    // s ones, then 1-(s+1)/k, then zeros; on the sigma_k = 0 boundary for s >= k.
    for (int s = k; s < K; ++s) {
        std::vector<double> v(std::size_t(K), 0.0);
        for (int i = 0; i < s; ++i) v[std::size_t(i)] = 1.0;
        v[std::size_t(s)] = 1.0 - double(s + 1) / double(k);
        detail::push_permutations(fam.vectors, v, "ones(" + std::to_string(s) + ")+1-(s+1)/k", full);
    }

    // 1-K/k with K-1 ones; sigma_l = binom(K,l)(1 - l/k) >= 0 up to level k.
    {
        std::vector<double> v(std::size_t(K), 1.0);
        v[0] = 1.0 - double(K) / double(k);
        detail::push_permutations(fam.vectors, v, "1-K/k+ones", full);
    }
    return fam;
}

} // namespace garding
