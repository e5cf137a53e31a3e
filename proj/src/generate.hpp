#pragma once

#include <string>

#include "decomposition.hpp"
#include "types.hpp"

namespace gctuf {

// Seeded instance generators. Same seed, same output, bit for bit; every
// generated matrix is verified totally unimodular before it leaves.

enum class MatrixKind { network, transposed_network, core, three_sum, pivot };

MatrixKind matrix_kind_from_name(const std::string& name);
std::string matrix_kind_name(MatrixKind kind);

struct GeneratedMatrix {
  IntMatrix t;
  DecompPtr structure;  // witness structure for the generated matrix
};
GeneratedMatrix gen_matrix(MatrixKind kind, Rng& rng, int size_hint);

struct GctufGenParams {
  MatrixKind kind = MatrixKind::network;
  int size_hint = 4;          // target column count
  int64_t group_order_max = 4;
  int depth = 1;              // |G| - |R|
  bool plant = true;          // plant a feasible point (otherwise verdict is open)
  int box_radius = 2;
  bool attach_structure = false;  // carry the witness decomposition in the instance
};
GctufInstance gen_gctuf(const GctufGenParams& p, uint64_t seed);

struct IpGenParams {
  int n = 2;       // x variables; the embedding adds one column per congruency
  int delta = 2;   // product of the embedded moduli
};
// Strictly delta-modular and bounded by construction (verified, resampled on
// failure).
IpInstance gen_strict_ip(const IpGenParams& p, uint64_t seed);

GclfInstance gen_gclf(uint64_t seed, int ground, int64_t group_order_max = 6);
CirculationInstance gen_gcc(uint64_t seed, int nv, int max_cap = 3, int64_t group_order_max = 4);

AbelianGroup gen_group(Rng& rng, int64_t order_max, int64_t order_min = 1);

}  // namespace gctuf
