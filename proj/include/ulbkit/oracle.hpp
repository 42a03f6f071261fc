#pragma once

/**
 * @file oracle.hpp
 * @brief Ground truth independent of the LP machinery: explicit codes,
 *        direct energies, separation, design strength, a seeded sphere
 *        minimizer (an upper estimate only) and exhaustive binary search.
 *
 * Points are unit vectors (sphere; projective lines as unit representatives
 * in R^{mn}, coordinates grouped by m) or integer words (Hamming, Johnson).
 */

#include "ulbkit/error.hpp"
#include "ulbkit/parallel.hpp"
#include "ulbkit/pmspace.hpp"
#include "ulbkit/potentials.hpp"
#include "ulbkit/ulb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace ulbkit {

struct Code {
    std::vector<std::vector<double>> vectors;
    std::vector<std::vector<int>> words;

    std::size_t size() const { return vectors.empty() ? words.size() : vectors.size(); }
    bool is_vector_code() const { return !vectors.empty(); }
};

namespace detail {

using Quaternion = std::array<double, 4>;

inline Quaternion qmul(const Quaternion& a, const Quaternion& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

/// |<x,y>|^2 for the Hermitian product over R, C or H (m = 1, 2, 4).
inline double hermitian_abs2(const std::vector<double>& x, const std::vector<double>& y, int m) {
    Quaternion acc{0, 0, 0, 0};
    for (std::size_t i = 0; i + static_cast<std::size_t>(m) <= x.size(); i += static_cast<std::size_t>(m)) {
        Quaternion a{0, 0, 0, 0}, b{0, 0, 0, 0};
        for (int r = 0; r < m; ++r) {
            a[static_cast<std::size_t>(r)] = x[i + static_cast<std::size_t>(r)];
            b[static_cast<std::size_t>(r)] = y[i + static_cast<std::size_t>(r)];
        }
        a[1] = -a[1];
        a[2] = -a[2];
        a[3] = -a[3];
        Quaternion p = qmul(a, b);
        for (int r = 0; r < 4; ++r) acc[static_cast<std::size_t>(r)] += p[static_cast<std::size_t>(r)];
    }
    return acc[0] * acc[0] + acc[1] * acc[1] + acc[2] * acc[2] + acc[3] * acc[3];
}

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace detail

/// sigma(d(x_i, x_j)) for two points of the code.
inline double inner_t(const SpaceDescriptor& space, const Code& c, std::size_t i, std::size_t j) {
    switch (space.family()) {
        case Family::Sphere: return detail::dot(c.vectors[i], c.vectors[j]);
        case Family::Projective: return 2.0 * detail::hermitian_abs2(c.vectors[i], c.vectors[j], space.params().m) - 1.0;
        case Family::Hamming: {
            int d = 0;
            for (std::size_t r = 0; r < c.words[i].size(); ++r) d += c.words[i][r] != c.words[j][r];
            return 1.0 - 2.0 * d / space.n();
        }
        case Family::Johnson: {
            int common = 0;
            for (std::size_t r = 0; r < c.words[i].size(); ++r) common += c.words[i][r] & c.words[j][r];
            return 1.0 - 2.0 * (space.params().w - common) / space.params().w;
        }
    }
    return 0.0;
}

/// Throws ParameterError unless every point is a valid element of the space.
inline void validate_code(const SpaceDescriptor& space, const Code& c) {
    if (c.size() == 0) throw ParameterError("code is empty");
    const SpaceParams& p = space.params();
    if (space.family() == Family::Sphere || space.family() == Family::Projective) {
        if (c.vectors.empty()) throw ParameterError(space.name() + " codes are given as unit vectors");
        const std::size_t dim = static_cast<std::size_t>(space.family() == Family::Sphere ? p.n : p.n * p.m);
        for (const auto& v : c.vectors) {
            if (v.size() != dim) throw ParameterError("vector of dimension " + std::to_string(v.size()) +
                                                      ", expected " + std::to_string(dim));
            if (std::abs(detail::dot(v, v) - 1.0) > 1e-9) throw ParameterError("vector is not of unit length");
        }
    } else {
        if (c.words.empty()) throw ParameterError(space.name() + " codes are given as words");
        const int alphabet = space.family() == Family::Hamming ? p.q : 2;
        for (const auto& w : c.words) {
            if (static_cast<int>(w.size()) != p.n) throw ParameterError("word length must be " + std::to_string(p.n));
            int weight = 0;
            for (int x : w) {
                if (x < 0 || x >= alphabet) throw ParameterError("word symbol out of range");
                weight += x != 0;
            }
            if (space.family() == Family::Johnson && weight != p.w)
                throw ParameterError("Johnson word must have weight " + std::to_string(p.w));
        }
    }
}

/// Sum over ordered pairs x != y of h(t(x,y)); the mean convention divides by |C|.
inline double energy(const SpaceDescriptor& space, const Code& c, const Potential& h,
                     EnergyConvention conv = EnergyConvention::Sum) {
    validate_code(space, c);
    double e = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double t = std::min(1.0, inner_t(space, c, i, j));
            if (t >= 1.0 - 1e-12) throw DomainError("coincident points " + std::to_string(i) + " and " + std::to_string(j));
            e += 2.0 * h(t);
        }
    return conv == EnergyConvention::Sum ? e : e / static_cast<double>(c.size());
}

struct Separation {
    double s = -1.0;    // max t over distinct pairs
    double ell = 1.0;   // min t over distinct pairs
    double u = -1.0;    // same as s
};

inline Separation separation(const SpaceDescriptor& space, const Code& c) {
    validate_code(space, c);
    if (c.size() < 2) throw ParameterError("separation needs at least two points");
    Separation r;
    r.s = -std::numeric_limits<double>::infinity();
    r.ell = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double t = inner_t(space, c, i, j);
            r.s = std::max(r.s, t);
            r.ell = std::min(r.ell, t);
        }
    r.u = r.s;
    return r;
}

/// Largest tau <= tau_max with |sum_{x,y} Q_i(t(x,y))| <= 1e-8 M^2 for i = 1..tau.
inline int design_strength(const SpaceDescriptor& space, const Code& c, int tau_max) {
    validate_code(space, c);
    tau_max = std::min(tau_max, space.max_degree());
    const double M = static_cast<double>(c.size());
    std::vector<double> ts;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) ts.push_back(i == j ? 1.0 : std::clamp(inner_t(space, c, i, j), -1.0, 1.0));
    for (int i = 1; i <= tau_max; ++i) {
        double s = 0.0;
        for (double t : ts) s += q_eval(space, i, t);
        if (std::abs(s) > 1e-8 * M * M) return i - 1;
    }
    return tau_max;
}

namespace detail {

inline std::vector<std::vector<int>> extended_hamming_words() {
    const int gen[4][8] = {{1, 1, 1, 1, 0, 0, 0, 0},
                           {0, 0, 1, 1, 1, 1, 0, 0},
                           {0, 0, 0, 0, 1, 1, 1, 1},
                           {0, 1, 0, 1, 0, 1, 0, 1}};
    std::vector<std::vector<int>> words;
    for (int m = 0; m < 16; ++m) {
        std::vector<int> w(8, 0);
        for (int r = 0; r < 4; ++r)
            if (m >> r & 1)
                for (int c = 0; c < 8; ++c) w[static_cast<std::size_t>(c)] ^= gen[r][c];
        words.push_back(w);
    }
    return words;
}

inline void normalize(std::vector<double>& v) {
    double n = std::sqrt(dot(v, v));
    for (double& x : v) x /= n;
}

}  // namespace detail

/**
 * Fixtures: sphere simplex, cross_polytope, cube, icosahedron (n = 3);
 * Hamming (q = 2) repetition, parity_check, extended_hamming_8 (n = 8);
 * Johnson fano (J(7,3)), steiner_3_4_8 (J(8,4)); projective orthonormal_basis.
 */
inline Code named_config(const SpaceDescriptor& space, const std::string& name) {
    const SpaceParams& p = space.params();
    const int n = p.n;
    Code c;
    auto unknown = [&] { return ParameterError("no configuration '" + name + "' for " + space.name()); };
    switch (space.family()) {
        case Family::Sphere: {
            if (name == "simplex") {
                // Rows of the Helmert basis give the centred standard basis of R^{n+1}.
                for (int j = 0; j <= n; ++j) {
                    std::vector<double> v(static_cast<std::size_t>(n));
                    for (int k = 1; k <= n; ++k) {
                        double e = j < k ? 1.0 : (j == k ? -static_cast<double>(k) : 0.0);
                        v[static_cast<std::size_t>(k - 1)] = e / std::sqrt(static_cast<double>(k) * (k + 1));
                    }
                    detail::normalize(v);
                    c.vectors.push_back(v);
                }
            } else if (name == "cross_polytope") {
                for (int i = 0; i < n; ++i)
                    for (double sgn : {1.0, -1.0}) {
                        std::vector<double> v(static_cast<std::size_t>(n), 0.0);
                        v[static_cast<std::size_t>(i)] = sgn;
                        c.vectors.push_back(v);
                    }
            } else if (name == "cube") {
                if (n > 12) throw ParameterError("cube: n too large");
                for (int m = 0; m < (1 << n); ++m) {
                    std::vector<double> v(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = ((m >> i) & 1 ? -1.0 : 1.0) / std::sqrt(n);
                    c.vectors.push_back(v);
                }
            } else if (name == "icosahedron") {
                if (n != 3) throw unknown();
                const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
                for (int rot = 0; rot < 3; ++rot)
                    for (double a : {1.0, -1.0})
                        for (double b : {phi, -phi}) {
                            std::vector<double> base{0.0, a, b};
                            std::vector<double> v(3);
                            for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>((i + rot) % 3)] = base[static_cast<std::size_t>(i)];
                            detail::normalize(v);
                            c.vectors.push_back(v);
                        }
            } else {
                throw unknown();
            }
            break;
        }
        case Family::Hamming: {
            if (p.q != 2) throw unknown();
            if (name == "repetition") {
                c.words = {std::vector<int>(static_cast<std::size_t>(n), 0), std::vector<int>(static_cast<std::size_t>(n), 1)};
            } else if (name == "parity_check") {
                if (n > 16) throw ParameterError("parity_check: n too large");
                for (int m = 0; m < (1 << n); ++m) {
                    if (__builtin_popcount(static_cast<unsigned>(m)) % 2) continue;
                    std::vector<int> w(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = (m >> i) & 1;
                    c.words.push_back(w);
                }
            } else if (name == "extended_hamming_8") {
                if (n != 8) throw unknown();
                c.words = detail::extended_hamming_words();
            } else {
                throw unknown();
            }
            break;
        }
        case Family::Johnson: {
            if (name == "steiner_3_4_8" && n == 8 && p.w == 4) {
                for (const auto& w : detail::extended_hamming_words())
                    if (std::accumulate(w.begin(), w.end(), 0) == 4) c.words.push_back(w);
            } else if (name == "fano" && n == 7 && p.w == 3) {
                for (const auto& w : detail::extended_hamming_words())
                    if (std::accumulate(w.begin(), w.end(), 0) == 4 && w[7] == 1)
                        c.words.emplace_back(w.begin(), w.begin() + 7);
            } else {
                throw unknown();
            }
            break;
        }
        case Family::Projective: {
            if (name != "orthonormal_basis") throw unknown();
            for (int i = 0; i < n; ++i) {
                std::vector<double> v(static_cast<std::size_t>(n * p.m), 0.0);
                v[static_cast<std::size_t>(i * p.m)] = 1.0;
                c.vectors.push_back(v);
            }
            break;
        }
    }
    return c;
}

inline std::vector<std::string> named_config_names(const SpaceDescriptor& space) {
    switch (space.family()) {
        case Family::Sphere: {
            std::vector<std::string> v{"simplex", "cross_polytope", "cube"};
            if (space.n() == 3) v.push_back("icosahedron");
            return v;
        }
        case Family::Hamming: {
            if (space.params().q != 2) return {};
            std::vector<std::string> v{"repetition", "parity_check"};
            if (space.n() == 8) v.push_back("extended_hamming_8");
            return v;
        }
        case Family::Johnson:
            if (space.n() == 7 && space.params().w == 3) return {"fano"};
            if (space.n() == 8 && space.params().w == 4) return {"steiner_3_4_8"};
            return {};
        case Family::Projective: return {"orthonormal_basis"};
    }
    return {};
}

struct MinimizeResult {
    Code code;
    double energy = 0.0;
    bool converged = false;
    int best_restart = 0;
    std::vector<double> restart_energies;
};

namespace detail {

struct Descent {
    Code code;
    double energy = 0.0;
    bool converged = false;
};

inline double sphere_energy(const std::vector<std::vector<double>>& x, const Potential& h) {
    double e = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            double t = dot(x[i], x[j]);
            if (t >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
            e += 2.0 * h(t);
        }
    return e;
}

inline Descent descend(int n, int M, const Potential& h, std::uint64_t seed, int max_iter) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> x(static_cast<std::size_t>(M), std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& v : x) {
        for (double& c : v) c = gauss(rng);
        normalize(v);
    }
    double e = sphere_energy(x, h);
    double step = 0.05;
    bool converged = false;
    std::vector<std::vector<double>> g(x.size(), std::vector<double>(static_cast<std::size_t>(n)));
    for (int it = 0; it < max_iter; ++it) {
        double gnorm = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::fill(g[i].begin(), g[i].end(), 0.0);
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (i == j) continue;
                const double d = 2.0 * h.derivative(std::min(dot(x[i], x[j]), 1.0 - 1e-15), 1);
                for (int r = 0; r < n; ++r) g[i][static_cast<std::size_t>(r)] += d * x[j][static_cast<std::size_t>(r)];
            }
            const double radial = dot(g[i], x[i]);
            for (int r = 0; r < n; ++r) g[i][static_cast<std::size_t>(r)] -= radial * x[i][static_cast<std::size_t>(r)];
            gnorm = std::max(gnorm, std::sqrt(dot(g[i], g[i])));
        }
        if (gnorm < 1e-11 * (1.0 + std::abs(e))) {
            converged = true;
            break;
        }
        bool accepted = false;
        while (step > 1e-16) {
            auto y = x;
            for (std::size_t i = 0; i < y.size(); ++i) {
                for (int r = 0; r < n; ++r) y[i][static_cast<std::size_t>(r)] -= step * g[i][static_cast<std::size_t>(r)];
                normalize(y[i]);
            }
            double ey = sphere_energy(y, h);
            if (ey < e) {
                x = std::move(y);
                const double drop = e - ey;
                e = ey;
                step *= 1.5;
                accepted = true;
                if (drop <= 1e-15 * std::abs(e)) converged = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted || converged) {
            converged = true;
            break;
        }
    }
    Descent d;
    d.code.vectors = std::move(x);
    d.energy = e;
    d.converged = converged;
    return d;
}

}  // namespace detail

/**
 * Best of `restarts` projected gradient descents from random starts on
 * S^{n-1}; restart r is seeded with seed + r. An upper estimate of the
 * minimal energy only.
 */
inline MinimizeResult minimize_sphere(int n, int M, const Potential& h, int restarts = 20, std::uint64_t seed = 1,
                                      int max_iter = 20000) {
    if (n < 2 || M < 2) throw ParameterError("minimize_sphere: requires n >= 2 and M >= 2");
    if (restarts < 1) throw ParameterError("minimize_sphere: restarts must be >= 1");
    std::vector<int> ids(static_cast<std::size_t>(restarts));
    std::iota(ids.begin(), ids.end(), 0);
    auto runs = parallel_map(ids, [&](int r) { return detail::descend(n, M, h, seed + static_cast<std::uint64_t>(r), max_iter); });
    MinimizeResult best;
    best.energy = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < runs.size(); ++r) {
        best.restart_energies.push_back(runs[r].energy);
        if (runs[r].energy < best.energy) {
            best.energy = runs[r].energy;
            best.code = runs[r].code;
            best.converged = runs[r].converged;
            best.best_restart = static_cast<int>(r);
        }
    }
    return best;
}

struct ExhaustiveResult {
    Code code;
    double energy = 0.0;
    std::uint64_t subsets = 0;
};

/**
 * Exact minimal energy of M-word binary codes of length n. With `reduce`,
 * a code is translated to contain 0 and permuted so that a second word is
 * 1^w 0^{n-w}; only the remaining M - 2 words are enumerated.
 */
inline ExhaustiveResult exhaustive_hamming(int n, int M, const Potential& h, bool reduce = true) {
    if (n < 1 || n > 20) throw ParameterError("exhaustive_hamming: n must lie in 1..20");
    const std::uint64_t N = std::uint64_t{1} << n;
    if (M < 2 || static_cast<std::uint64_t>(M) > N) throw ParameterError("exhaustive_hamming: invalid M");
    const double count = reduce ? n * detail::binomial_real(static_cast<double>(N - 2), M - 2)
                                : detail::binomial_real(static_cast<double>(N), M);
    if (count > 1e7) throw ParameterError("exhaustive_hamming: instance too large (" + std::to_string(count) + " subsets)");

    std::vector<double> hv(static_cast<std::size_t>(n) + 1);
    for (int d = 1; d <= n; ++d) hv[static_cast<std::size_t>(d)] = h(1.0 - 2.0 * d / n);
    auto pair_energy = [&](std::uint64_t a, std::uint64_t b) {
        return hv[static_cast<std::size_t>(__builtin_popcountll(a ^ b))];
    };

    ExhaustiveResult best;
    best.energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> chosen, bestset;

    auto evaluate = [&](const std::vector<std::uint64_t>& set) {
        double e = 0.0;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j) e += 2.0 * pair_energy(set[i], set[j]);
        ++best.subsets;
        if (e < best.energy - 1e-12 * std::abs(e)) {
            best.energy = e;
            bestset = set;
        }
    };

    // Combinations of `k` elements from pool, appended to the fixed prefix.
    auto enumerate = [&](const std::vector<std::uint64_t>& prefix, const std::vector<std::uint64_t>& pool, int k) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        if (static_cast<std::size_t>(k) > pool.size()) return;
        std::vector<std::uint64_t> set = prefix;
        set.resize(prefix.size() + static_cast<std::size_t>(k));
        while (true) {
            for (int r = 0; r < k; ++r) set[prefix.size() + static_cast<std::size_t>(r)] = pool[idx[static_cast<std::size_t>(r)]];
            evaluate(set);
            int r = k - 1;
            while (r >= 0 && idx[static_cast<std::size_t>(r)] == pool.size() - static_cast<std::size_t>(k - r)) --r;
            if (r < 0) break;
            ++idx[static_cast<std::size_t>(r)];
            for (int s = r + 1; s < k; ++s) idx[static_cast<std::size_t>(s)] = idx[static_cast<std::size_t>(s - 1)] + 1;
        }
    };

    if (reduce) {
        for (int w = 1; w <= n; ++w) {
            const std::uint64_t second = (std::uint64_t{1} << w) - 1;
            std::vector<std::uint64_t> pool;
            for (std::uint64_t x = 1; x < N; ++x)
                if (x != second) pool.push_back(x);
            enumerate({0, second}, pool, M - 2);
        }
    } else {
        std::vector<std::uint64_t> pool(N);
        std::iota(pool.begin(), pool.end(), std::uint64_t{0});
        enumerate({}, pool, M);
    }
    for (std::uint64_t x : bestset) {
        std::vector<int> w(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = static_cast<int>((x >> i) & 1);
        best.code.words.push_back(w);
    }
    return best;
}

}  // namespace ulbkit
