#pragma once

#include "aah/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aah {

using MatZ = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

enum class BlockKind { Unipotent, Hyperbolic, Rotation, Identity, Explicit };

const char* block_kind_name(BlockKind k);

struct BlockSpec {
  BlockKind kind = BlockKind::Identity;
  int size = 1;          // unipotent / identity
  Rational param = 1;    // unipotent: exp(param * N_k), N_k the nilpotent shift
  long long m = 3;       // hyperbolic: exp trace
  double theta = 0;      // rotation angle
  MatZ matrix;           // explicit: the integer block itself

  static BlockSpec unipotent(int k, Rational s = 1);
  static BlockSpec hyperbolic(long long m);
  static BlockSpec rotation(double theta);
  static BlockSpec identity(int k);
  static BlockSpec explicit_block(MatZ E);

  int dim() const;
  std::string describe() const;
};

// exp of the block at its natural time, plus exact characteristic polynomial data.
struct BlockExp {
  MatD M;
  // monic char poly, coefficients c0 + c1 x + ... + x^k, exact integers
  std::vector<long long> charpoly;
};

BlockExp exp_block(const BlockSpec& b);

struct BlockWitness {
  MatZ E;
  std::string evidence;
};

// Throws NoWitness for rotation angles outside {2π, π, 2π/3, π/2, π/3} or hyperbolic m < 3.
BlockWitness block_integer_witness(const BlockSpec& b);

struct LatticeWitness {
  std::string t0;
  MatZ E;
  std::vector<std::string> evidence;
  long long det = 0;
  bool in_sl = false;  // det E = +1; det -1 is reported but not claimed as a lattice
  std::vector<long long> charpoly_E, charpoly_exp;
  bool charpoly_match = false;
  std::string family;  // set when a hyperbolic block makes this a countable family
};

LatticeWitness assemble_witness(const std::vector<BlockSpec>& blocks);

struct SmithForm {
  MatZ U, V, S;  // U M V = S, U and V unimodular
  std::vector<long long> factors;  // diagonal of S, d1 | d2 | ...
};

// Exact over int64; throws InvalidInput on intermediate overflow.
SmithForm smith_normal_form(const MatZ& M);

struct AbelianGroup {
  int rank = 0;
  std::vector<long long> torsion;  // invariant factors > 1
  std::string describe() const;    // "Z^2 + Z_3"
};

// Γ = Z ⋉_E Z^m; Γ/[Γ,Γ] = Z ⊕ coker(E - I).
AbelianGroup lattice_abelianization(const MatZ& E);

std::vector<long long> charpoly_int(const MatZ& E);
long long det_int(const MatZ& E);

// c·L1 and L2 conjugate over R: char-poly prefilter then kernel dimensions of
// X -> AX - XB (Byrnes–Gauger). Exact for rational input.
bool isomorphism_scale_check(const MatD& L1, const MatD& L2, double c, double tol = 1e-8);
bool isomorphism_scale_check(const MatQ& L1, const MatQ& L2, const Rational& c);

}  // namespace aah
