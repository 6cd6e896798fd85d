#include "stability/fp_linalg.hpp"

#include "stability/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace stab::fp {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

int inverse(int x, int p) {
  x %= p;
  if (x < 0) x += p;
  if (x == 0) throw Error(Errc::kInvalidArgument, "zero has no inverse mod p");
  // Fermat: x^(p-2).
  int result = 1;
  int base = x;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return result;
}

Matrix::Matrix(int p, int rows, int cols)
    : p_(p), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {
  if (rows < 0 || cols < 0) throw Error(Errc::kInvalidArgument, "negative matrix shape");
}

Matrix::Matrix(int p, int rows, int cols, std::vector<int> row_major)
    : p_(p), rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(Errc::kInvalidArgument, "matrix data does not match its shape");
  }
  for (auto& x : data_) {
    x %= p;
    if (x < 0) x += p;
  }
}

Matrix Matrix::identity(int p, int n) {
  Matrix m(p, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vector Matrix::row(int i) const {
  return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

Vector Matrix::apply(std::span<const int> x) const {
  Vector y(static_cast<std::size_t>(rows_), 0);
  for (int i = 0; i < rows_; ++i) {
    int acc = 0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = acc % p_;
  }
  return y;
}

Matrix Matrix::transpose() const {
  Matrix t(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](int x) { return x == 0; });
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::kInvalidArgument, "matrix product shape mismatch");
  Matrix c(a.p_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      int acc = 0;
      for (int k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc % a.p_;
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(Errc::kInvalidArgument, "matrix sum shape mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw Error(Errc::kInvalidArgument, "matrix difference shape mismatch");
  }
  Matrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) {
    c.data_[i] = (a.data_[i] - b.data_[i] + a.p_) % a.p_;
  }
  return c;
}

Matrix from_rows(int p, int cols, const std::vector<Vector>& rows) {
  std::vector<int> data;
  data.reserve(rows.size() * static_cast<std::size_t>(cols));
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return Matrix(p, static_cast<int>(rows.size()), cols, std::move(data));
}

Echelon rref(const Matrix& m) {
  const int p = m.p();
  Matrix a = m;
  std::vector<int> pivots;
  int lead_row = 0;
  for (int col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
    int pivot = -1;
    for (int i = lead_row; i < a.rows(); ++i) {
      if (a(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != lead_row) {
      for (int j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(lead_row, j));
    }
    const int inv = inverse(a(lead_row, col), p);
    for (int j = 0; j < a.cols(); ++j) a(lead_row, j) = a(lead_row, j) * inv % p;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == lead_row || a(i, col) == 0) continue;
      const int f = a(i, col);
      for (int j = 0; j < a.cols(); ++j) {
        a(i, j) = ((a(i, j) - f * a(lead_row, j)) % p + p) % p;
      }
    }
    pivots.push_back(col);
    ++lead_row;
  }
  std::vector<int> kept(a.data().begin(), a.data().begin() + lead_row * a.cols());
  return {Matrix(p, lead_row, a.cols(), std::move(kept)), std::move(pivots)};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).pivots.size()); }

Matrix nullspace(const Matrix& m) {
  const int p = m.p();
  const auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Vector> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    Vector x(static_cast<std::size_t>(m.cols()), 0);
    x[static_cast<std::size_t>(f)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      x[static_cast<std::size_t>(pivots[i])] = (p - r(static_cast<int>(i), f)) % p;
    }
    basis.push_back(std::move(x));
  }
  return rref(from_rows(p, m.cols(), basis)).reduced;
}

Subspace::Subspace(int p, int ambient, const Matrix& spanning_rows) : ambient_(ambient) {
  if (spanning_rows.cols() != ambient) {
    throw Error(Errc::kInvalidArgument, "spanning vectors have the wrong length");
  }
  auto e = rref(spanning_rows.rows() == 0 ? Matrix(p, 0, ambient) : spanning_rows);
  basis_ = std::move(e.reduced);
  pivots_ = std::move(e.pivots);
}

Subspace Subspace::zero(int p, int ambient) { return Subspace(p, ambient, Matrix(p, 0, ambient)); }

Subspace Subspace::full(int p, int ambient) {
  return Subspace(p, ambient, Matrix::identity(p, ambient));
}

Vector Subspace::coordinates(std::span<const int> v) const {
  Vector c(static_cast<std::size_t>(dim()), 0);
  Vector rest(v.begin(), v.end());
  const int q = p();
  for (int i = 0; i < dim(); ++i) {
    const int coef = rest[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
    c[static_cast<std::size_t>(i)] = coef;
    if (coef == 0) continue;
    for (int j = 0; j < ambient_; ++j) {
      auto& x = rest[static_cast<std::size_t>(j)];
      x = ((x - coef * basis_(i, j)) % q + q) % q;
    }
  }
  if (std::any_of(rest.begin(), rest.end(), [](int x) { return x != 0; })) {
    throw Error(Errc::kInvalidArgument, "vector does not lie in the subspace");
  }
  return c;
}

bool Subspace::contains(std::span<const int> v) const {
  Vector rest(v.begin(), v.end());
  const int q = p();
  for (int i = 0; i < dim(); ++i) {
    const int coef = rest[static_cast<std::size_t>(pivots_[static_cast<std::size_t>(i)])];
    if (coef == 0) continue;
    for (int j = 0; j < ambient_; ++j) {
      auto& x = rest[static_cast<std::size_t>(j)];
      x = ((x - coef * basis_(i, j)) % q + q) % q;
    }
  }
  return std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (int i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis().row(i))) return false;
  }
  return true;
}

std::vector<int> Subspace::complement_columns() const {
  std::vector<int> out;
  for (int c = 0; c < ambient_; ++c) {
    if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) out.push_back(c);
  }
  return out;
}

Subspace operator+(const Subspace& u, const Subspace& w) {
  if (u.ambient_ != w.ambient_) throw Error(Errc::kInvalidArgument, "ambient mismatch in sum");
  std::vector<Vector> rows;
  for (int i = 0; i < u.dim(); ++i) rows.push_back(u.basis_.row(i));
  for (int i = 0; i < w.dim(); ++i) rows.push_back(w.basis_.row(i));
  return Subspace(u.p(), u.ambient_, from_rows(u.p(), u.ambient_, rows));
}

namespace {

// Rows span the annihilator of w, so that w = {x : annihilator * x = 0}.
Matrix annihilator(const Subspace& w) {
  if (w.dim() == 0) return Matrix::identity(w.p(), w.ambient());
  return nullspace(w.basis());
}

}  // namespace

Subspace intersect(const Subspace& u, const Subspace& w) {
  if (u.ambient_ != w.ambient_) {
    throw Error(Errc::kInvalidArgument, "ambient mismatch in intersection");
  }
  const int p = u.p();
  if (u.dim() == 0) return Subspace::zero(p, u.ambient_);
  // x = U^T c with annihilator(W) x = 0.
  const Matrix ut = u.basis_.transpose();
  const Matrix coeffs = nullspace(annihilator(w) * ut);
  std::vector<Vector> rows;
  for (int i = 0; i < coeffs.rows(); ++i) rows.push_back(ut.apply(coeffs.row(i)));
  return Subspace(p, u.ambient_, from_rows(p, u.ambient_, rows));
}

Subspace image(const Matrix& a, const Subspace& u) {
  if (a.cols() != u.ambient()) throw Error(Errc::kInvalidArgument, "image shape mismatch");
  std::vector<Vector> rows;
  for (int i = 0; i < u.dim(); ++i) rows.push_back(a.apply(u.basis().row(i)));
  return Subspace(a.p(), a.rows(), from_rows(a.p(), a.rows(), rows));
}

Subspace preimage(const Matrix& a, const Subspace& w) {
  if (a.rows() != w.ambient()) throw Error(Errc::kInvalidArgument, "preimage shape mismatch");
  if (a.cols() == 0) return Subspace::zero(a.p(), 0);
  return Subspace(a.p(), a.cols(), nullspace(annihilator(w) * a));
}

namespace {

void enumerate_rref(int p, int n, int k, std::vector<Subspace>& out) {
  // Choose pivot columns, then fill the free entries to the right of each
  // pivot that are not themselves pivot columns.
  std::vector<int> pivots(static_cast<std::size_t>(k));
  auto fill = [&](auto&& self, int next, int from) -> void {
    if (next == k) {
      std::vector<std::pair<int, int>> free_slots;
      for (int i = 0; i < k; ++i)
        for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < n; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_slots.emplace_back(i, c);
      std::vector<int> digits(free_slots.size(), 0);
      while (true) {
        Matrix m(p, k, n);
        for (int i = 0; i < k; ++i) m(i, pivots[static_cast<std::size_t>(i)]) = 1;
        for (std::size_t s = 0; s < free_slots.size(); ++s) {
          m(free_slots[s].first, free_slots[s].second) = digits[s];
        }
        out.emplace_back(p, n, m);
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
      return;
    }
    for (int c = from; c <= n - (k - next); ++c) {
      pivots[static_cast<std::size_t>(next)] = c;
      self(self, next + 1, c + 1);
    }
  };
  fill(fill, 0, 0);
}

}  // namespace

std::shared_ptr<const std::vector<Subspace>> all_subspaces(int p, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<Subspace>>> table;
  std::lock_guard lock(mutex);
  auto& slot = table[{p, n}];
  if (!slot) {
    auto list = std::make_shared<std::vector<Subspace>>();
    for (int k = 0; k <= n; ++k) {
      const auto first = list->size();
      enumerate_rref(p, n, k, *list);
      std::sort(list->begin() + static_cast<std::ptrdiff_t>(first), list->end());
    }
    slot = std::move(list);
  }
  return slot;
}

std::uint64_t subspace_count(int p, int n) {
  // Gaussian binomials via the recurrence [n,k] = [n-1,k-1] + p^k [n-1,k].
  std::vector<std::uint64_t> row{1};
  for (int m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t pk = 1;
    for (int k = 0; k <= m; ++k) {
      const std::uint64_t left = k > 0 ? row[static_cast<std::size_t>(k) - 1] : 0;
      const std::uint64_t right = k < m ? row[static_cast<std::size_t>(k)] : 0;
      next[static_cast<std::size_t>(k)] = left + pk * right;
      pk *= static_cast<std::uint64_t>(p);
    }
    row = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto v : row) total += v;
  return total;
}

}  // namespace stab::fp
