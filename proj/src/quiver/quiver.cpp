#include "stability/quiver.hpp"

#include "stability/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace stab::quiver {

namespace {

bool compute_acyclic(int n, const std::vector<Arrow>& arrows) {
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (const auto& a : arrows) ++indegree[static_cast<std::size_t>(a.target)];
  std::vector<int> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  int seen = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : arrows) {
      if (a.source == v && --indegree[static_cast<std::size_t>(a.target)] == 0) {
        ready.push_back(a.target);
      }
    }
  }
  return seen == n;
}

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffu;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Quiver::Quiver(int vertices, std::vector<Arrow> arrows)
    : vertices_(vertices), arrows_(std::move(arrows)) {
  if (vertices < 0) throw Error(Errc::kInvalidArgument, "negative vertex count");
  for (const auto& a : arrows_) {
    if (a.source < 0 || a.source >= vertices || a.target < 0 || a.target >= vertices) {
      throw Error(Errc::kInvalidArgument, "arrow references a missing vertex");
    }
  }
  acyclic_ = compute_acyclic(vertices, arrows_);
}

std::shared_ptr<const Quiver> a2_quiver() {
  static const auto q = std::make_shared<const Quiver>(2, std::vector<Arrow>{{0, 1}});
  return q;
}

std::shared_ptr<const Quiver> kronecker_quiver() {
  static const auto q = std::make_shared<const Quiver>(2, std::vector<Arrow>{{0, 1}, {0, 1}});
  return q;
}

Rep::Rep(std::shared_ptr<const Quiver> quiver, int p, std::vector<int> dims,
         std::vector<fp::Matrix> maps)
    : quiver_(std::move(quiver)), p_(p), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!quiver_) throw Error(Errc::kInvalidArgument, "representation without a quiver");
  if (!fp::is_prime(p_)) throw Error(Errc::kInvalidArgument, "field characteristic must be prime");
  if (static_cast<int>(dims_.size()) != quiver_->vertices()) {
    throw Error(Errc::kInvalidArgument, "dimension vector length differs from vertex count");
  }
  if (std::any_of(dims_.begin(), dims_.end(), [](int d) { return d < 0; })) {
    throw Error(Errc::kInvalidArgument, "negative dimension");
  }
  if (maps_.size() != quiver_->arrows().size()) {
    throw Error(Errc::kInvalidArgument, "need one matrix per arrow");
  }
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const auto& a = quiver_->arrows()[i];
    if (maps_[i].p() != p_ || maps_[i].rows() != dim(a.target) || maps_[i].cols() != dim(a.source)) {
      throw Error(Errc::kInvalidArgument, "arrow matrix " + std::to_string(i) + " has the wrong shape");
    }
  }
}

Rep Rep::zero(std::shared_ptr<const Quiver> quiver, int p) {
  const auto n = static_cast<std::size_t>(quiver->vertices());
  std::vector<fp::Matrix> maps(quiver->arrows().size(), fp::Matrix(p, 0, 0));
  return Rep(std::move(quiver), p, std::vector<int>(n, 0), std::move(maps));
}

int Rep::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), 0); }

std::uint64_t Rep::fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  h = fnv_mix(h, static_cast<std::uint64_t>(p_));
  for (int d : dims_) h = fnv_mix(h, static_cast<std::uint64_t>(d));
  for (const auto& m : maps_)
    for (int x : m.data()) h = fnv_mix(h, static_cast<std::uint64_t>(x));
  return h;
}

Rep direct_sum(const Rep& x, const Rep& y) {
  if (!(x.quiver() == y.quiver()) || x.p() != y.p()) {
    throw Error(Errc::kBackendMismatch, "direct sum of representations of different quivers");
  }
  const int p = x.p();
  std::vector<int> dims(x.dims().size());
  for (std::size_t v = 0; v < dims.size(); ++v) dims[v] = x.dims()[v] + y.dims()[v];
  std::vector<fp::Matrix> maps;
  for (std::size_t i = 0; i < x.maps().size(); ++i) {
    const auto& a = x.quiver().arrows()[i];
    fp::Matrix m(p, dims[static_cast<std::size_t>(a.target)], dims[static_cast<std::size_t>(a.source)]);
    const auto& mx = x.maps()[i];
    const auto& my = y.maps()[i];
    for (int r = 0; r < mx.rows(); ++r)
      for (int c = 0; c < mx.cols(); ++c) m(r, c) = mx(r, c);
    for (int r = 0; r < my.rows(); ++r)
      for (int c = 0; c < my.cols(); ++c) m(mx.rows() + r, mx.cols() + c) = my(r, c);
    maps.push_back(std::move(m));
  }
  return Rep(x.quiver_ptr(), p, std::move(dims), std::move(maps));
}

std::vector<int> Subrep::dims() const {
  std::vector<int> out;
  out.reserve(spaces.size());
  for (const auto& s : spaces) out.push_back(s.dim());
  return out;
}

bool Subrep::is_zero() const {
  return std::all_of(spaces.begin(), spaces.end(), [](const auto& s) { return s.dim() == 0; });
}

bool Subrep::is_whole() const {
  return std::all_of(spaces.begin(), spaces.end(),
                     [](const auto& s) { return s.dim() == s.ambient(); });
}

bool is_morphism(const Morphism& f) {
  const auto& q = f.source.quiver();
  if (!(q == f.target.quiver()) || f.source.p() != f.target.p()) return false;
  if (f.components.size() != static_cast<std::size_t>(q.vertices())) return false;
  for (int v = 0; v < q.vertices(); ++v) {
    const auto& c = f.components[static_cast<std::size_t>(v)];
    if (c.rows() != f.target.dim(v) || c.cols() != f.source.dim(v)) return false;
  }
  for (std::size_t i = 0; i < q.arrows().size(); ++i) {
    const auto& a = q.arrows()[i];
    const auto& ft = f.components[static_cast<std::size_t>(a.target)];
    const auto& fs = f.components[static_cast<std::size_t>(a.source)];
    if (!(ft * f.source.maps()[i] == f.target.maps()[i] * fs)) return false;
  }
  return true;
}

Morphism identity_morphism(const Rep& e) {
  Morphism f{e, e, {}};
  for (int v = 0; v < e.quiver().vertices(); ++v) f.components.push_back(fp::Matrix::identity(e.p(), e.dim(v)));
  return f;
}

Morphism zero_morphism(const Rep& e, const Rep& f) {
  Morphism g{e, f, {}};
  for (int v = 0; v < e.quiver().vertices(); ++v) g.components.emplace_back(e.p(), f.dim(v), e.dim(v));
  return g;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target == g.source)) throw Error(Errc::kBackendMismatch, "composition of non-composable maps");
  Morphism h{f.source, g.target, {}};
  for (std::size_t v = 0; v < f.components.size(); ++v) h.components.push_back(g.components[v] * f.components[v]);
  return h;
}

Morphism combine(const std::vector<Morphism>& basis, const std::vector<int>& coeffs) {
  if (basis.empty()) throw Error(Errc::kInvalidArgument, "empty morphism basis");
  Morphism out = zero_morphism(basis.front().source, basis.front().target);
  const int p = out.source.p();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int c = ((coeffs[i] % p) + p) % p;
    for (std::size_t v = 0; v < out.components.size(); ++v) {
      const auto& b = basis[i].components[v];
      auto& o = out.components[v];
      for (int r = 0; r < o.rows(); ++r)
        for (int col = 0; col < o.cols(); ++col) o(r, col) = (o(r, col) + c * b(r, col)) % p;
    }
  }
  return out;
}

int ChargePreset::vertex_count() const {
  return alpha.empty() ? 0 : static_cast<int>(alpha.front().size());
}

void ChargePreset::check_shape() const {
  if (r < 0) throw Error(Errc::kInvalidArgument, "preset degree bound must be non-negative");
  const auto levels = static_cast<std::size_t>(r) + 1;
  if (alpha.size() != levels || beta.size() != levels) {
    throw Error(Errc::kInvalidArgument, "preset needs r+1 functionals for both a and b");
  }
  const auto n = alpha.front().size();
  for (std::size_t k = 0; k < levels; ++k) {
    if (alpha[k].size() != n || beta[k].size() != n) {
      throw Error(Errc::kInvalidArgument, "preset functionals disagree on the vertex count");
    }
  }
}

ChargePolynomial ChargePreset::charge(const std::vector<int>& dims) const {
  if (static_cast<int>(dims.size()) != vertex_count()) {
    throw Error(Errc::kBackendMismatch, "preset '" + name + "' does not match the vertex count");
  }
  ChargePolynomial out(r);
  for (int k = 0; k <= r; ++k) {
    Rational a = 0;
    Rational b = 0;
    for (std::size_t v = 0; v < dims.size(); ++v) {
      if (dims[v] == 0) continue;
      a += alpha[static_cast<std::size_t>(k)][v] * dims[v];
      b += beta[static_cast<std::size_t>(k)][v] * dims[v];
    }
    out.set(k, std::move(a), std::move(b));
  }
  return out;
}

PresetAudit audit_preset(const ChargePreset& preset, std::uint64_t seed, int samples) {
  preset.check_shape();
  PresetAudit audit;
  const int n = preset.vertex_count();
  auto check = [&](const std::vector<int>& dims) {
    const bool nonzero = std::any_of(dims.begin(), dims.end(), [](int d) { return d != 0; });
    const auto verdict = positivity_audit(preset.charge(dims), nonzero);
    ++audit.checked;
    if (!verdict.pass()) audit.failures.push_back({dims, verdict});
  };
  for (int v = 0; v < n; ++v) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(v)] = 1;
    check(e);
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::vector<int> dims(static_cast<std::size_t>(n));
    for (auto& d : dims) d = static_cast<int>(rng() % 4);
    check(dims);
  }
  return audit;
}

ChargePreset validated(ChargePreset preset, std::uint64_t seed, int samples) {
  preset.validated = audit_preset(preset, seed, samples).pass();
  return preset;
}

ChargePreset preset_a2_0() {
  // a_0(d) = -d2, b_0(d) = d1 + d2.
  return validated({"CP-A2-0", 0, {{Rational(0), Rational(-1)}}, {{Rational(1), Rational(1)}}, false});
}

ChargePreset preset_a2_1() {
  // a_1 = 0, b_1(d) = d1 + d2, a_0(d) = -d2, b_0(d) = d1.
  return validated({"CP-A2-1",
                    1,
                    {{Rational(0), Rational(-1)}, {Rational(0), Rational(0)}},
                    {{Rational(1), Rational(0)}, {Rational(1), Rational(1)}},
                    false});
}

namespace {

ChargePreset r1_preset(std::string name, std::vector<Rational> a1, std::vector<Rational> b1,
                       std::vector<Rational> a0, std::vector<Rational> b0) {
  return validated({std::move(name), 1, {std::move(a0), std::move(a1)}, {std::move(b0), std::move(b1)}, false});
}

}  // namespace

ChargePreset preset_mixed() {
  // Source simple: (a1, b1, a0, b0) = (-1, 1, -2, 1); target simple: (0, 0, -1, 0).
  return r1_preset("CP-MIX", {Rational(-1), Rational(0)}, {Rational(1), Rational(0)},
                   {Rational(-2), Rational(-1)}, {Rational(1), Rational(0)});
}

ChargePreset preset_mixed_dual() {
  return r1_preset("CP-MIX-DUAL", {Rational(0), Rational(-1)}, {Rational(0), Rational(1)},
                   {Rational(-1), Rational(-2)}, {Rational(0), Rational(1)});
}

ChargePreset preset_wall() {
  // Source simple: a1 = 0, b1 = 1, b0 = 1; target simple: a1 = -1, b1 = 1, b0 = 0.
  return r1_preset("CP-A2-WALL", {Rational(0), Rational(-1)}, {Rational(1), Rational(1)},
                   {Rational(-1), Rational(-1)}, {Rational(1), Rational(0)});
}

ChargePreset preset_flipped() {
  auto p = preset_a2_1();
  p.name = "CP-A2-1-FLIP";
  p.beta[1] = {Rational(1), Rational(-1)};
  return validated(std::move(p));
}

std::vector<ChargePreset> builtin_presets() {
  return {preset_a2_0(), preset_a2_1(), preset_mixed(), preset_mixed_dual(), preset_wall(), preset_flipped()};
}

std::optional<ChargePreset> find_builtin_preset(const std::string& name) {
  for (auto& p : builtin_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

Rep random_rep(std::shared_ptr<const Quiver> quiver, const std::vector<int>& dim_bound,
               std::uint64_t seed, int p) {
  if (static_cast<int>(dim_bound.size()) != quiver->vertices()) {
    throw Error(Errc::kInvalidArgument, "dimension bound length differs from vertex count");
  }
  // Modular reduction of raw engine output keeps the stream portable across
  // standard libraries, unlike std::uniform_int_distribution.
  std::mt19937_64 rng(seed);
  std::vector<int> dims;
  for (int b : dim_bound) dims.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(b + 1)));
  std::vector<fp::Matrix> maps;
  for (const auto& a : quiver->arrows()) {
    const int rows = dims[static_cast<std::size_t>(a.target)];
    const int cols = dims[static_cast<std::size_t>(a.source)];
    std::vector<int> entries(static_cast<std::size_t>(rows * cols));
    for (auto& x : entries) x = static_cast<int>(rng() % static_cast<std::uint64_t>(p));
    maps.emplace_back(p, rows, cols, std::move(entries));
  }
  return Rep(std::move(quiver), p, std::move(dims), std::move(maps));
}

// ---------------------------------------------------------------------------

RepCategory::RepCategory(ChargePreset preset) : RepCategory(std::move(preset), Options{}) {}

RepCategory::RepCategory(ChargePreset preset, Options options)
    : preset_(std::move(preset)), options_(options) {
  preset_.check_shape();
  if (!preset_.validated && !options_.force_unvalidated) {
    throw Error(Errc::kUnvalidatedPreset,
                "preset '" + preset_.name + "' failed validation; pass the override to use it anyway");
  }
}

namespace {

void require_same_parent(const Subrep& x, const Subrep& y) {
  if (!(*x.parent == *y.parent)) throw Error(Errc::kParentMismatch, "subobjects of different parents");
}

bool arrow_closed(const Rep& e, std::size_t arrow, const fp::Subspace& src, const fp::Subspace& tgt) {
  const auto& m = e.maps()[arrow];
  for (int i = 0; i < src.dim(); ++i) {
    if (!tgt.contains(m.apply(src.basis().row(i)))) return false;
  }
  return true;
}

}  // namespace

std::vector<Subrep> RepCategory::subobjects(const Rep& e) const {
  if (e.total_dim() > options_.dimension_bound) {
    throw Error(Errc::kDimensionBoundExceeded,
                "total dimension " + std::to_string(e.total_dim()) + " exceeds bound " +
                    std::to_string(options_.dimension_bound));
  }
  const auto parent = std::make_shared<const Rep>(e);
  const int n = e.quiver().vertices();
  std::vector<std::shared_ptr<const std::vector<fp::Subspace>>> tables;
  for (int v = 0; v < n; ++v) tables.push_back(fp::all_subspaces(e.p(), e.dim(v)));

  std::vector<Subrep> out;
  std::vector<fp::Subspace> chosen(static_cast<std::size_t>(n));
  // Backtrack over vertices, checking each arrow once both ends are chosen.
  auto place = [&](auto&& self, int v) -> void {
    if (v == n) {
      out.push_back({parent, chosen});
      return;
    }
    for (const auto& s : *tables[static_cast<std::size_t>(v)]) {
      chosen[static_cast<std::size_t>(v)] = s;
      bool ok = true;
      const auto& arrows = e.quiver().arrows();
      for (std::size_t i = 0; i < arrows.size() && ok; ++i) {
        const auto& a = arrows[i];
        if (std::max(a.source, a.target) != v) continue;
        ok = arrow_closed(e, i, chosen[static_cast<std::size_t>(a.source)],
                          chosen[static_cast<std::size_t>(a.target)]);
      }
      if (ok) self(self, v + 1);
    }
  };
  place(place, 0);

  if (options_.shuffle_seed) {
    std::mt19937_64 rng(*options_.shuffle_seed ^ e.fingerprint());
    for (std::size_t i = out.size(); i > 1; --i) {
      std::swap(out[i - 1], out[static_cast<std::size_t>(rng() % i)]);
    }
  }
  return out;
}

Subrep RepCategory::zero_subobject(const Rep& e) const {
  Subrep s{std::make_shared<const Rep>(e), {}};
  for (int d : e.dims()) s.spaces.push_back(fp::Subspace::zero(e.p(), d));
  return s;
}

Subrep RepCategory::whole(const Rep& e) const {
  Subrep s{std::make_shared<const Rep>(e), {}};
  for (int d : e.dims()) s.spaces.push_back(fp::Subspace::full(e.p(), d));
  return s;
}

Rep RepCategory::child(const Subrep& s) const {
  const Rep& e = *s.parent;
  std::vector<fp::Matrix> maps;
  for (std::size_t i = 0; i < e.maps().size(); ++i) {
    const auto& a = e.quiver().arrows()[i];
    const auto& src = s.spaces[static_cast<std::size_t>(a.source)];
    const auto& tgt = s.spaces[static_cast<std::size_t>(a.target)];
    fp::Matrix m(e.p(), tgt.dim(), src.dim());
    for (int c = 0; c < src.dim(); ++c) {
      const auto coords = tgt.coordinates(e.maps()[i].apply(src.basis().row(c)));
      for (int r = 0; r < tgt.dim(); ++r) m(r, c) = coords[static_cast<std::size_t>(r)];
    }
    maps.push_back(std::move(m));
  }
  return Rep(e.quiver_ptr(), e.p(), s.dims(), std::move(maps));
}

namespace {

// Quotient coordinates: reduce x modulo the RREF basis and read the entries
// at the non-pivot columns.
fp::Matrix quotient_projection(const fp::Subspace& u) {
  const auto comp = u.complement_columns();
  fp::Matrix proj(u.p(), static_cast<int>(comp.size()), u.ambient());
  const int p = u.p();
  for (std::size_t q = 0; q < comp.size(); ++q) {
    const int c = comp[q];
    proj(static_cast<int>(q), c) = 1;
    for (int i = 0; i < u.dim(); ++i) {
      const int piv = u.pivots()[static_cast<std::size_t>(i)];
      proj(static_cast<int>(q), piv) = (p - u.basis()(i, c)) % p;
    }
  }
  return proj;
}

fp::Matrix complement_lift(const fp::Subspace& u) {
  const auto comp = u.complement_columns();
  fp::Matrix lift(u.p(), u.ambient(), static_cast<int>(comp.size()));
  for (std::size_t q = 0; q < comp.size(); ++q) lift(comp[q], static_cast<int>(q)) = 1;
  return lift;
}

}  // namespace

Rep RepCategory::quotient(const Subrep& s) const {
  const Rep& e = *s.parent;
  std::vector<int> dims;
  for (const auto& u : s.spaces) dims.push_back(u.ambient() - u.dim());
  std::vector<fp::Matrix> maps;
  for (std::size_t i = 0; i < e.maps().size(); ++i) {
    const auto& a = e.quiver().arrows()[i];
    maps.push_back(quotient_projection(s.spaces[static_cast<std::size_t>(a.target)]) * e.maps()[i] *
                   complement_lift(s.spaces[static_cast<std::size_t>(a.source)]));
  }
  return Rep(e.quiver_ptr(), e.p(), std::move(dims), std::move(maps));
}

Morphism RepCategory::projection(const Subrep& s) const {
  Morphism f{*s.parent, quotient(s), {}};
  for (const auto& u : s.spaces) f.components.push_back(quotient_projection(u));
  return f;
}

Morphism RepCategory::inclusion(const Subrep& s) const {
  Morphism f{child(s), *s.parent, {}};
  for (const auto& u : s.spaces) f.components.push_back(u.basis().transpose());
  return f;
}

Subrep RepCategory::embed(const Subrep& inner, const Subrep& outer) const {
  if (inner.spaces.size() != outer.spaces.size()) {
    throw Error(Errc::kParentMismatch, "inner subobject does not live in the outer one");
  }
  Subrep out{outer.parent, {}};
  for (std::size_t v = 0; v < outer.spaces.size(); ++v) {
    const auto& u = outer.spaces[v];
    if (inner.spaces[v].ambient() != u.dim()) {
      throw Error(Errc::kParentMismatch, "inner subobject does not live in the outer one");
    }
    out.spaces.push_back(fp::image(u.basis().transpose(), inner.spaces[v]));
  }
  return out;
}

Subrep RepCategory::sum(const Subrep& x, const Subrep& y) const {
  require_same_parent(x, y);
  Subrep out{x.parent, {}};
  for (std::size_t v = 0; v < x.spaces.size(); ++v) out.spaces.push_back(x.spaces[v] + y.spaces[v]);
  return out;
}

Subrep RepCategory::intersect(const Subrep& x, const Subrep& y) const {
  require_same_parent(x, y);
  Subrep out{x.parent, {}};
  for (std::size_t v = 0; v < x.spaces.size(); ++v) {
    out.spaces.push_back(fp::intersect(x.spaces[v], y.spaces[v]));
  }
  return out;
}

Subrep RepCategory::kernel(const Morphism& f) const {
  if (!is_morphism(f)) throw Error(Errc::kBackendMismatch, "not a morphism of representations");
  Subrep out{std::make_shared<const Rep>(f.source), {}};
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    const int d = f.source.dim(static_cast<int>(v));
    out.spaces.emplace_back(f.source.p(), d, fp::nullspace(f.components[v]));
  }
  return out;
}

Subrep RepCategory::image(const Morphism& f) const {
  if (!is_morphism(f)) throw Error(Errc::kBackendMismatch, "not a morphism of representations");
  Subrep out{std::make_shared<const Rep>(f.target), {}};
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    const int d = f.source.dim(static_cast<int>(v));
    out.spaces.push_back(fp::image(f.components[v], fp::Subspace::full(f.source.p(), d)));
  }
  return out;
}

Rep RepCategory::cokernel(const Morphism& f) const { return quotient(image(f)); }

bool RepCategory::is_surjective(const Morphism& f) const { return image(f).is_whole(); }

Subrep RepCategory::pullback(const Subrep& q, const Morphism& f) const {
  if (!(*q.parent == f.target)) throw Error(Errc::kParentMismatch, "subobject is not in the codomain");
  if (!is_surjective(f)) throw Error(Errc::kNotSurjective, "pullback along a non-surjective map");
  Subrep out{std::make_shared<const Rep>(f.source), {}};
  for (std::size_t v = 0; v < f.components.size(); ++v) {
    const auto& c = f.components[v];
    if (c.cols() == 0) {
      out.spaces.push_back(fp::Subspace::zero(f.source.p(), 0));
    } else {
      out.spaces.push_back(fp::preimage(c, q.spaces[v]));
    }
  }
  return out;
}

std::vector<Morphism> RepCategory::hom_basis(const Rep& e, const Rep& f) const {
  if (!(e.quiver() == f.quiver()) || e.p() != f.p()) {
    throw Error(Errc::kBackendMismatch, "Hom between representations of different quivers");
  }
  const int p = e.p();
  const int n = e.quiver().vertices();
  // Unknown f_v[i][j] sits at column offset[v] + i * dim_e(v) + j.
  std::vector<int> offset(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) offset[static_cast<std::size_t>(v) + 1] = offset[static_cast<std::size_t>(v)] + f.dim(v) * e.dim(v);
  const int unknowns = offset.back();
  auto var = [&](int v, int i, int j) { return offset[static_cast<std::size_t>(v)] + i * e.dim(v) + j; };

  std::vector<fp::Vector> equations;
  for (std::size_t k = 0; k < e.maps().size(); ++k) {
    const auto& a = e.quiver().arrows()[k];
    const auto& ae = e.maps()[k];
    const auto& af = f.maps()[k];
    // (f_t A_e - A_f f_s)[i][j] = 0.
    for (int i = 0; i < f.dim(a.target); ++i)
      for (int j = 0; j < e.dim(a.source); ++j) {
        fp::Vector row(static_cast<std::size_t>(unknowns), 0);
        for (int m = 0; m < e.dim(a.target); ++m) {
          auto& x = row[static_cast<std::size_t>(var(a.target, i, m))];
          x = (x + ae(m, j)) % p;
        }
        for (int m = 0; m < f.dim(a.source); ++m) {
          auto& x = row[static_cast<std::size_t>(var(a.source, m, j))];
          x = (x - af(i, m) % p + p) % p;
        }
        equations.push_back(std::move(row));
      }
  }
  const fp::Matrix system = fp::from_rows(p, unknowns, equations);
  const fp::Matrix solutions = equations.empty() ? fp::Matrix::identity(p, unknowns) : fp::nullspace(system);

  std::vector<Morphism> basis;
  for (int s = 0; s < solutions.rows(); ++s) {
    Morphism g = zero_morphism(e, f);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < f.dim(v); ++i)
        for (int j = 0; j < e.dim(v); ++j) g.components[static_cast<std::size_t>(v)](i, j) = solutions(s, var(v, i, j));
    basis.push_back(std::move(g));
  }
  return basis;
}

}  // namespace stab::quiver
