#include "qport/ising.hpp"

namespace qport {

IsingModel qubo_to_ising(const QuboProblem& qubo) {
    IsingModel model;
    model.n = qubo.n;
    model.h = Vector::Zero(qubo.n);
    model.offset = qubo.constant;

    // x_i = (1 - z_i)/2:
    //   Q_ii x_i          -> Q_ii/2 - (Q_ii/2) z_i
    //   Q_ij x_i x_j      -> Q_ij/4 - (Q_ij/4)(z_i + z_j) + (Q_ij/4) z_i z_j
    for (Index i = 0; i < qubo.n; ++i) {
        model.h[i] -= qubo.q(i, i) / 2.0;
        model.offset += qubo.q(i, i) / 2.0;
        for (Index j = i + 1; j < qubo.n; ++j) {
            const double qij = qubo.q(i, j);
            if (qij == 0.0) continue;
            model.j[{i, j}] = qij / 4.0;
            model.h[i] -= qij / 4.0;
            model.h[j] -= qij / 4.0;
            model.offset += qij / 4.0;
        }
    }
    return model;
}

double ising_energy(const IsingModel& model, const IntVector& z) {
    if (z.size() != model.n) throw std::invalid_argument("ising_energy: length mismatch");
    for (Index i = 0; i < model.n; ++i) {
        if (z[i] != 1 && z[i] != -1) throw std::invalid_argument("ising_energy: spins must be +1/-1");
    }
    double e = model.offset;
    for (Index i = 0; i < model.n; ++i) e += model.h[i] * z[i];
    for (const auto& [key, coupling] : model.j) {
        e += coupling * z[key.first] * z[key.second];
    }
    return e;
}

IntVector spins_from_bits(const Portfolio& x) {
    IntVector z(x.size());
    for (Index i = 0; i < x.size(); ++i) z[i] = x.bits[i] ? -1 : 1;
    return z;
}

double ising_energy_of_basis(const IsingModel& model, std::uint64_t basis_index) {
    double e = model.offset;
    for (Index i = 0; i < model.n; ++i) {
        e += ((basis_index >> i) & 1u) ? -model.h[i] : model.h[i];
    }
    for (const auto& [key, coupling] : model.j) {
        const bool xi = (basis_index >> key.first) & 1u;
        const bool xj = (basis_index >> key.second) & 1u;
        e += (xi == xj) ? coupling : -coupling;
    }
    return e;
}

}  // namespace qport
