#pragma once

#include "qport/qubo.hpp"
#include "qport/types.hpp"

#include <map>
#include <utility>

namespace qport {

/// Diagonal spin Hamiltonian sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j + offset.
/// Spin convention: z = +1 <-> x = 0 and z = -1 <-> x = 1, i.e. x = (1-z)/2.
/// The offset carries every constant term (substitution constants plus the
/// QUBO's tracked penalty constant), so energies are absolute, which matters
/// once expectation values get extrapolated.
struct IsingModel {
    Vector h;
    std::map<std::pair<Index, Index>, double> j;  // keys satisfy first < second
    double offset = 0.0;
    Index n = 0;
};

IsingModel qubo_to_ising(const QuboProblem& qubo);

/// Energy of a spin configuration (entries +1/-1).
double ising_energy(const IsingModel& model, const IntVector& z);

/// Spin configuration of a portfolio under the x = (1-z)/2 convention.
IntVector spins_from_bits(const Portfolio& x);

/// Energy of the basis state with the given index (qubit i = bit i of index).
double ising_energy_of_basis(const IsingModel& model, std::uint64_t basis_index);

}  // namespace qport
