#pragma once

// Dense linear algebra over a small prime field F_p. Matrices act on column
// vectors; subspaces are stored as reduced row echelon bases, which makes
// subspace equality structural.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace stab::fp {

using Vector = std::vector<int>;

bool is_prime(int p);
int inverse(int x, int p);

class Matrix {
 public:
  Matrix() = default;
  Matrix(int p, int rows, int cols);
  Matrix(int p, int rows, int cols, std::vector<int> row_major);

  static Matrix identity(int p, int n);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  int& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  Vector row(int i) const;
  Vector apply(std::span<const int> x) const;
  Matrix transpose() const;
  bool is_zero() const;
  const std::vector<int>& data() const { return data_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix&, const Matrix&) = default;

 private:
  int p_ = 2;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

/// Stacks rows of `rows` (each of length cols) into a matrix.
Matrix from_rows(int p, int cols, const std::vector<Vector>& rows);

struct Echelon {
  Matrix reduced;           // RREF with zero rows removed
  std::vector<int> pivots;  // pivot column of each row
};

Echelon rref(const Matrix& m);
int rank(const Matrix& m);

/// Basis (as rows, RREF) of {x : m x = 0}.
Matrix nullspace(const Matrix& m);

class Subspace {
 public:
  Subspace() = default;
  /// The span of the given rows inside F_p^ambient.
  Subspace(int p, int ambient, const Matrix& spanning_rows);

  static Subspace zero(int p, int ambient);
  static Subspace full(int p, int ambient);

  int p() const { return basis_.p(); }
  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(std::span<const int> v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of v in the RREF basis; v must lie in the subspace.
  Vector coordinates(std::span<const int> v) const;

  /// Standard basis vectors at the non-pivot columns; together with the
  /// basis rows they form a basis of the ambient space.
  std::vector<int> complement_columns() const;

  friend Subspace operator+(const Subspace& u, const Subspace& w);
  friend Subspace intersect(const Subspace& u, const Subspace& w);

  friend bool operator==(const Subspace& u, const Subspace& w) {
    return u.ambient_ == w.ambient_ && u.basis_ == w.basis_;
  }
  friend auto operator<=>(const Subspace& u, const Subspace& w) {
    if (auto c = u.ambient_ <=> w.ambient_; c != 0) return c;
    return u.basis_ <=> w.basis_;
  }

 private:
  int ambient_ = 0;
  Matrix basis_;
  std::vector<int> pivots_;
};

Subspace intersect(const Subspace& u, const Subspace& w);

/// A(U) for A : F^n -> F^m.
Subspace image(const Matrix& a, const Subspace& u);
/// {x : A x in W}.
Subspace preimage(const Matrix& a, const Subspace& w);

/// Every subspace of F_p^n, in increasing dimension then lexicographic RREF
/// order. Tables are computed once per (p, n) and shared; safe across threads.
std::shared_ptr<const std::vector<Subspace>> all_subspaces(int p, int n);

/// Number of subspaces of F_p^n by the Gaussian-binomial sum.
std::uint64_t subspace_count(int p, int n);

}  // namespace stab::fp
