#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmeta/rng.hpp"
#include "qmeta/statevector.hpp"

namespace qmeta {

enum class Pauli : char { X = 'X', Y = 'Y', Z = 'Z' };

/// One weighted Pauli string: coefficient * prod_q sigma_q, identity on
/// qubits absent from the map.
struct PauliTerm {
    double coefficient = 0.0;
    std::map<int, Pauli> string;
};

/// Real-weighted sum of Pauli strings. Construction merges duplicate
/// strings and drops exact-zero coefficients, so the term list is canonical.
struct PauliSum {
    std::vector<PauliTerm> terms;

    PauliSum() = default;
    explicit PauliSum(std::vector<PauliTerm> raw) {
        std::map<std::map<int, Pauli>, double> merged;
        for (auto& t : raw) {
            if (!std::isfinite(t.coefficient)) throw std::invalid_argument("non-finite Pauli coefficient");
            for (const auto& [q, p] : t.string) {
                (void)p;
                if (q < 0) throw std::invalid_argument("negative qubit index");
            }
            merged[t.string] += t.coefficient;
        }
        for (auto& [s, c] : merged) {
            if (c == 0.0) continue;
            terms.push_back(PauliTerm{c, s});
        }
    }

    int max_qubit() const {
        int m = -1;
        for (const auto& t : terms)
            if (!t.string.empty()) m = std::max(m, t.string.rbegin()->first);
        return m;
    }

    PauliSum scaled(double c) const {
        std::vector<PauliTerm> out = terms;
        for (auto& t : out) t.coefficient *= c;
        return PauliSum(std::move(out));
    }
};

/// One-norm of the coefficient vector, ||H||_* = sum_j |alpha_j|.
inline double pauli_coefficient_norm(const PauliSum& h) {
    double acc = 0.0;
    for (const auto& t : h.terms) acc += std::abs(t.coefficient);
    return acc;
}

/// Mask form of a term for fast statevector kernels:
///   P|z> = weight * i^{nY} ... folded into `weight`, a sign from
///   popcount(z & phase) and a bit flip by `flip`.
struct PackedTerm {
    std::uint64_t flip = 0;  // X and Y positions
    std::uint64_t phase = 0; // Y and Z positions
    Complex weight;          // coefficient * i^{number of Y}
};

struct PackedPauliSum {
    int num_qubits = 0;
    std::vector<PackedTerm> terms;

    PackedPauliSum() = default;

    PackedPauliSum(const PauliSum& h, int num_qubits_in) : num_qubits(num_qubits_in) {
        check_qubit_count(num_qubits);
        static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        terms.reserve(h.terms.size());
        for (const auto& t : h.terms) {
            PackedTerm p;
            int ny = 0;
            for (const auto& [q, op] : t.string) {
                if (q >= num_qubits) throw std::invalid_argument("qubit index out of range");
                const std::uint64_t bit = std::uint64_t{1} << q;
                switch (op) {
                    case Pauli::X: p.flip |= bit; break;
                    case Pauli::Y: p.flip |= bit; p.phase |= bit; ++ny; break;
                    case Pauli::Z: p.phase |= bit; break;
                }
            }
            p.weight = t.coefficient * i_pow[ny & 3];
            terms.push_back(p);
        }
    }

    /// out = H * in. Buffers must not alias.
    void apply(const std::vector<Complex>& in, std::vector<Complex>& out) const {
        const std::size_t dim = std::size_t{1} << num_qubits;
        if (in.size() != dim) throw std::invalid_argument("statevector length mismatch");
        out.assign(dim, Complex(0.0, 0.0));
        for (const auto& t : terms) {
            for (std::size_t z = 0; z < dim; ++z) {
                const Complex w = (std::popcount(z & t.phase) & 1) ? -t.weight : t.weight;
                out[z ^ t.flip] += w * in[z];
            }
        }
    }

    /// <in|H|in> accumulated without materializing H|in>.
    Complex expectation_raw(const std::vector<Complex>& in) const {
        const std::size_t dim = std::size_t{1} << num_qubits;
        if (in.size() != dim) throw std::invalid_argument("statevector length mismatch");
        Complex acc(0.0, 0.0);
        for (const auto& t : terms) {
            Complex tacc(0.0, 0.0);
            for (std::size_t z = 0; z < dim; ++z) {
                const Complex w = (std::popcount(z & t.phase) & 1) ? -t.weight : t.weight;
                tacc += std::conj(in[z ^ t.flip]) * w * in[z];
            }
            acc += tacc;
        }
        return acc;
    }
};

/// H * |s> as a (generally unnormalized) vector.
inline Statevector apply_pauli_sum(const Statevector& s, const PauliSum& h) {
    PackedPauliSum packed(h, s.num_qubits);
    Statevector out;
    out.num_qubits = s.num_qubits;
    packed.apply(s.amplitudes, out.amplitudes);
    return out;
}

/// <s|H|s>. The imaginary residue of the accumulation is discarded
/// (H is Hermitian by construction, so it is roundoff only).
inline double expectation(const Statevector& s, const PauliSum& h) {
    PackedPauliSum packed(h, s.num_qubits);
    return packed.expectation_raw(s.amplitudes).real();
}

/// Tabulates a Z/I-only PauliSum over all 2^n basis states.
inline DiagonalOperator diagonalize(const PauliSum& h, int n) {
    check_qubit_count(n);
    const std::size_t dim = std::size_t{1} << n;
    DiagonalOperator d;
    d.values.assign(dim, 0.0);
    for (const auto& t : h.terms) {
        std::uint64_t mask = 0;
        for (const auto& [q, op] : t.string) {
            if (op != Pauli::Z) throw std::invalid_argument("non-diagonal term in diagonalize");
            if (q >= n) throw std::invalid_argument("qubit index out of range");
            mask |= std::uint64_t{1} << q;
        }
        for (std::size_t z = 0; z < dim; ++z)
            d.values[z] += (std::popcount(z & mask) & 1) ? -t.coefficient : t.coefficient;
    }
    return d;
}

namespace detail {

inline double vec_norm(const std::vector<Complex>& v) {
    double acc = 0.0;
    for (const auto& a : v) acc += std::norm(a);
    return std::sqrt(acc);
}

/// One sub-step of the scaled Taylor evaluation: v <- exp(coef * H) v where
/// ||coef * H||_* <= 1 is expected for fast convergence.
inline void taylor_exp_step(const PackedPauliSum& h, Complex coef, std::vector<Complex>& v,
                            std::vector<Complex>& term, std::vector<Complex>& scratch,
                            double term_tol, int max_terms) {
    term = v;
    for (int k = 1; k <= max_terms; ++k) {
        h.apply(term, scratch);
        const Complex factor = coef / static_cast<double>(k);
        for (std::size_t i = 0; i < term.size(); ++i) term[i] = factor * scratch[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += term[i];
        if (vec_norm(term) <= term_tol) return;
    }
    throw NumericalError("hermitian exponential did not converge; tol too tight");
}

} // namespace detail

/// exp(-i*angle*H) |s> for Hermitian H, by truncated Taylor series with
/// scaling (split into sub-steps of coefficient-norm <= 1) on the sparse
/// matrix-vector action. Result is within `tol` of the exact exponential.
inline Statevector apply_hermitian_exponential(const Statevector& s, const PauliSum& h, double angle,
                                               double tol = 1e-10) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    PackedPauliSum packed(h, s.num_qubits);
    const double bound = std::abs(angle) * pauli_coefficient_norm(h);
    const int steps = std::max(1, static_cast<int>(std::ceil(bound)));
    const Complex coef(0.0, -angle / steps);
    const double term_tol = tol / (2.0 * steps);

    Statevector out = s;
    std::vector<Complex> term, scratch;
    for (int step = 0; step < steps; ++step)
        detail::taylor_exp_step(packed, coef, out.amplitudes, term, scratch, term_tol, 64);
    return out;
}

} // namespace qmeta
