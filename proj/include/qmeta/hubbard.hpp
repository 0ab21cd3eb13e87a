#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmeta/pauli.hpp"
#include "qmeta/statevector.hpp"

namespace qmeta {

/// 2D Fermi-Hubbard lattice with open boundaries, spinful fermions, one
/// orbital per site. Energies are in units of the hopping t.
struct HubbardInstance {
    int nx = 2;
    int ny = 2;
    double t = 1.0;
    double u = 1.0;

    int num_sites() const { return nx * ny; }
    int num_qubits() const { return 2 * nx * ny; }
};

/// Snake (boustrophedon) site ordering: row y runs left to right for even
/// y and right to left for odd y. Keeps horizontal neighbors adjacent in
/// the Jordan-Wigner ordering. Spin-up modes occupy qubits [0, N), spin-down
/// modes [N, 2N), with the same site order in each block.
inline int snake_site_index(int x, int y, int nx) {
    return y * nx + ((y % 2 == 0) ? x : nx - 1 - x);
}

struct HubbardLayout {
    int n_sites = 0;
    std::vector<std::pair<int, int>> edges_h; // (p, q) snake mode pairs, p < q
    std::vector<std::pair<int, int>> edges_v;
};

inline HubbardLayout hubbard_layout(const HubbardInstance& inst) {
    if (inst.nx < 1 || inst.ny < 1) throw std::invalid_argument("invalid lattice dimensions");
    if (inst.t <= 0.0 || inst.u <= 0.0) throw std::invalid_argument("t and U must be positive");
    if (inst.num_qubits() > kMaxQubits) throw std::invalid_argument("lattice exceeds qubit cap");
    HubbardLayout lay;
    lay.n_sites = inst.num_sites();
    auto add = [&](std::vector<std::pair<int, int>>& edges, int a, int b) {
        edges.emplace_back(std::min(a, b), std::max(a, b));
    };
    for (int y = 0; y < inst.ny; ++y)
        for (int x = 0; x + 1 < inst.nx; ++x)
            add(lay.edges_h, snake_site_index(x, y, inst.nx), snake_site_index(x + 1, y, inst.nx));
    for (int y = 0; y + 1 < inst.ny; ++y)
        for (int x = 0; x < inst.nx; ++x)
            add(lay.edges_v, snake_site_index(x, y, inst.nx), snake_site_index(x, y + 1, inst.nx));
    return lay;
}

namespace detail {

/// Jordan-Wigner image of -t (a^dag_p a_q + a^dag_q a_p), p < q:
/// -t/2 (X_p Z...Z X_q + Y_p Z...Z Y_q).
inline void append_hopping(std::vector<PauliTerm>& terms, int p, int q, double t) {
    std::map<int, Pauli> xs, ys;
    xs[p] = Pauli::X;
    xs[q] = Pauli::X;
    ys[p] = Pauli::Y;
    ys[q] = Pauli::Y;
    for (int r = p + 1; r < q; ++r) {
        xs[r] = Pauli::Z;
        ys[r] = Pauli::Z;
    }
    terms.push_back(PauliTerm{-0.5 * t, xs});
    terms.push_back(PauliTerm{-0.5 * t, ys});
}

} // namespace detail

struct HubbardParts {
    PauliSum hop_h;      // horizontal hopping, both spins
    PauliSum hop_v;      // vertical hopping, both spins
    PauliSum interact;   // U sum_i n_{i,up} n_{i,dn}

    PauliSum total() const {
        std::vector<PauliTerm> all;
        for (const auto* part : {&hop_h, &hop_v, &interact})
            all.insert(all.end(), part->terms.begin(), part->terms.end());
        return PauliSum(std::move(all));
    }
};

inline HubbardParts hubbard_parts(const HubbardInstance& inst) {
    const HubbardLayout lay = hubbard_layout(inst);
    const int n = lay.n_sites;
    HubbardParts parts;

    std::vector<PauliTerm> th, tv;
    for (const auto& [p, q] : lay.edges_h) {
        detail::append_hopping(th, p, q, inst.t);
        detail::append_hopping(th, n + p, n + q, inst.t);
    }
    for (const auto& [p, q] : lay.edges_v) {
        detail::append_hopping(tv, p, q, inst.t);
        detail::append_hopping(tv, n + p, n + q, inst.t);
    }
    parts.hop_h = PauliSum(std::move(th));
    parts.hop_v = PauliSum(std::move(tv));

    // n_up n_dn = (I - Z_up - Z_dn + Z_up Z_dn) / 4 per site.
    std::vector<PauliTerm> vi;
    for (int i = 0; i < n; ++i) {
        vi.push_back(PauliTerm{0.25 * inst.u, {}});
        vi.push_back(PauliTerm{-0.25 * inst.u, {{i, Pauli::Z}}});
        vi.push_back(PauliTerm{-0.25 * inst.u, {{n + i, Pauli::Z}}});
        vi.push_back(PauliTerm{0.25 * inst.u, {{i, Pauli::Z}, {n + i, Pauli::Z}}});
    }
    parts.interact = PauliSum(std::move(vi));
    return parts;
}

/// Single-particle kinetic matrix K (per spin): K(p,q) = -t on lattice
/// edges, indices in snake order.
inline Eigen::MatrixXd hubbard_kinetic_matrix(const HubbardInstance& inst) {
    const HubbardLayout lay = hubbard_layout(inst);
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(lay.n_sites, lay.n_sites);
    for (const auto* edges : {&lay.edges_h, &lay.edges_v})
        for (const auto& [p, q] : *edges) {
            k(p, q) = -inst.t;
            k(q, p) = -inst.t;
        }
    return k;
}

namespace detail {

/// Lowest `count` eigenvectors of a real symmetric matrix with a canonical
/// basis inside degenerate eigenspaces: project the standard unit vectors
/// onto the eigenspace, Gram-Schmidt them in order, and fix each sign by
/// the first non-negligible component. The result does not depend on the
/// eigensolver's arbitrary basis choice.
inline Eigen::MatrixXd canonical_lowest_orbitals(const Eigen::MatrixXd& sym, int count) {
    const int n = static_cast<int>(sym.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) throw NumericalError("kinetic eigensolve failed");
    const Eigen::VectorXd vals = solver.eigenvalues();
    const Eigen::MatrixXd vecs = solver.eigenvectors();

    Eigen::MatrixXd out(n, n);
    int filled = 0;
    int g = 0;
    while (g < n) {
        int h = g + 1;
        while (h < n && vals(h) - vals(g) < 1e-9) ++h;
        const Eigen::MatrixXd block = vecs.middleCols(g, h - g);
        const Eigen::MatrixXd proj = block * block.transpose();
        int taken = 0;
        for (int e = 0; e < n && taken < h - g; ++e) {
            Eigen::VectorXd w = proj.col(e);
            for (int j = 0; j < taken; ++j) w -= out.col(filled + j).dot(w) * out.col(filled + j);
            const double nrm = w.norm();
            if (nrm < 1e-8) continue;
            w /= nrm;
            for (int r = 0; r < n; ++r) {
                if (std::abs(w(r)) > 1e-10) {
                    if (w(r) < 0) w = -w;
                    break;
                }
            }
            out.col(filled + taken) = w;
            ++taken;
        }
        if (taken != h - g) throw NumericalError("degenerate orbital canonicalization failed");
        filled += taken;
        g = h;
    }
    return out.leftCols(count);
}

/// det(Phi[rows(z), :]) for every popcount(z) == k bitmask z; zero elsewhere.
inline std::vector<double> slater_amplitudes(const Eigen::MatrixXd& orbitals, int k) {
    const int n = static_cast<int>(orbitals.rows());
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> amp(dim, 0.0);
    Eigen::MatrixXd sub(k, k);
    for (std::size_t z = 0; z < dim; ++z) {
        if (std::popcount(z) != static_cast<unsigned>(k)) continue;
        int row = 0;
        for (int p = 0; p < n; ++p)
            if (z >> p & 1) sub.row(row++) = orbitals.row(p);
        amp[z] = sub.determinant();
    }
    return amp;
}

} // namespace detail

/// Half-filled, S_z = 0 eigenstate of the kinetic term: the Slater
/// determinant of the N/2 lowest canonical kinetic orbitals for each spin.
/// Amplitudes are orbital-submatrix determinants per occupation bitstring.
inline Statevector hubbard_initial_state(const HubbardInstance& inst) {
    const int n = inst.num_sites();
    if (n % 2 != 0) throw std::invalid_argument("half filling with equal spins needs an even site count");
    const int k = n / 2;
    const Eigen::MatrixXd orbitals = detail::canonical_lowest_orbitals(hubbard_kinetic_matrix(inst), k);
    const std::vector<double> block = detail::slater_amplitudes(orbitals, k);

    Statevector s;
    s.num_qubits = inst.num_qubits();
    s.amplitudes.assign(std::size_t{1} << s.num_qubits, Complex(0.0, 0.0));
    const std::size_t dim_block = std::size_t{1} << n;
    for (std::size_t zu = 0; zu < dim_block; ++zu) {
        if (block[zu] == 0.0) continue;
        for (std::size_t zd = 0; zd < dim_block; ++zd) {
            if (block[zd] == 0.0) continue;
            s.amplitudes[zu | (zd << n)] = Complex(block[zu] * block[zd], 0.0);
        }
    }
    const double nrm = state_norm(s);
    if (nrm < 1e-12) throw NumericalError("slater construction produced a null state");
    for (auto& a : s.amplitudes) a /= nrm;
    return s;
}

} // namespace qmeta
