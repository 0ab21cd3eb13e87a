#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qmeta {

using Complex = std::complex<double>;

/// Hard cap on simulated register width; 2^24 amplitudes is the largest
/// state this library is meant to hold in memory.
inline constexpr int kMaxQubits = 24;

/// Full complex amplitude vector over num_qubits qubits.
/// Qubit 0 is the least significant bit of the amplitude index.
struct Statevector {
    int num_qubits = 0;
    std::vector<Complex> amplitudes;

    std::size_t size() const { return amplitudes.size(); }
};

inline void check_qubit_count(int n) {
    if (n < 1 || n > kMaxQubits) throw std::invalid_argument("invalid qubit count");
}

/// Uniform superposition |+>^n.
inline Statevector plus_state(int n) {
    check_qubit_count(n);
    const std::size_t dim = std::size_t{1} << n;
    Statevector s;
    s.num_qubits = n;
    s.amplitudes.assign(dim, Complex(std::pow(2.0, -0.5 * n), 0.0));
    return s;
}

/// Computational basis state |z>.
inline Statevector basis_state(int n, std::uint64_t z) {
    check_qubit_count(n);
    const std::size_t dim = std::size_t{1} << n;
    if (z >= dim) throw std::invalid_argument("basis index out of range");
    Statevector s;
    s.num_qubits = n;
    s.amplitudes.assign(dim, Complex(0.0, 0.0));
    s.amplitudes[z] = Complex(1.0, 0.0);
    return s;
}

inline double state_norm(const Statevector& s) {
    double acc = 0.0;
    for (const auto& a : s.amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

inline Complex inner_product(const Statevector& a, const Statevector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("statevector length mismatch");
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

/// Eigenvalue per computational basis state of a Z/I-only operator.
struct DiagonalOperator {
    std::vector<double> values;
};

inline void apply_diagonal_phase_inplace(Statevector& s, const DiagonalOperator& d, double angle) {
    if (s.size() != d.values.size()) throw std::invalid_argument("diagonal length mismatch");
    for (std::size_t z = 0; z < s.size(); ++z) {
        const double phi = -angle * d.values[z];
        s.amplitudes[z] *= Complex(std::cos(phi), std::sin(phi));
    }
}

/// exp(-i*angle*D) |s> for a diagonal operator D.
inline Statevector apply_diagonal_phase(const Statevector& s, const DiagonalOperator& d, double angle) {
    Statevector out = s;
    apply_diagonal_phase_inplace(out, d, angle);
    return out;
}

inline void apply_mixer_inplace(Statevector& s, double angle) {
    const double c = std::cos(angle);
    const double m = std::sin(angle); // exp(-i a X) = [[cos, -i sin], [-i sin, cos]]
    const std::size_t dim = s.size();
    for (int q = 0; q < s.num_qubits; ++q) {
        const std::size_t bit = std::size_t{1} << q;
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & bit) continue;
            const Complex a0 = s.amplitudes[base];
            const Complex a1 = s.amplitudes[base | bit];
            s.amplitudes[base] = c * a0 - Complex(0.0, m) * a1;
            s.amplitudes[base | bit] = c * a1 - Complex(0.0, m) * a0;
        }
    }
}

/// exp(-i*angle*X) on every qubit, i.e. the QAOA transverse-field mixer layer.
inline Statevector apply_mixer(const Statevector& s, double angle) {
    Statevector out = s;
    apply_mixer_inplace(out, angle);
    return out;
}

} // namespace qmeta
