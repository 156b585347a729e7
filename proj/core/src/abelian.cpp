#include "coarse/abelian.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coarse {

FgAbGroup::FgAbGroup(std::size_t rank, std::vector<Integer> torsion)
    : rank_(rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < Integer(2)) throw std::invalid_argument("torsion factor must be >= 2");
    if (i > 0 && !floor_divmod(torsion_[i], torsion_[i - 1]).rem.is_zero()) {
      throw std::invalid_argument("torsion factors must form a divisibility chain");
    }
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& order) { return from_cyclic_orders({order}); }

FgAbGroup FgAbGroup::from_cyclic_orders(const std::vector<Integer>& orders) {
  // Diagonal relation matrix -> invariant factors.
  std::size_t n = orders.size();
  IntMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = abs(orders[i]);
  std::vector<Integer> inv = invariant_factors(d);
  std::size_t rank = n - inv.size();
  std::vector<Integer> tors;
  for (const Integer& x : inv)
    if (x > Integer(1)) tors.push_back(x);
  return FgAbGroup(rank, std::move(tors));
}

Integer FgAbGroup::generator_order(std::size_t i) const {
  if (i < rank_) return 0;
  return torsion_.at(i - rank_);
}

std::vector<Integer> FgAbGroup::normalize(std::vector<Integer> element) const {
  if (element.size() != generator_count()) throw std::invalid_argument("element has wrong length");
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    element[rank_ + i] = mod_nonneg(element[rank_ + i], torsion_[i]);
  }
  return element;
}

IntMatrix FgAbGroup::relation_matrix() const {
  IntMatrix r(generator_count(), torsion_.size());
  for (std::size_t i = 0; i < torsion_.size(); ++i) r(rank_ + i, i) = torsion_[i];
  return r;
}

std::string FgAbGroup::str() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank_ > 0) {
    os << "Z";
    if (rank_ > 1) os << "^" << rank_;
    first = false;
  }
  for (const Integer& t : torsion_) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

nlohmann::json FgAbGroup::to_json() const {
  nlohmann::json tors = nlohmann::json::array();
  for (const Integer& t : torsion_) {
    if (t.fits_int64())
      tors.push_back(t.to_int64());
    else
      tors.push_back(t.str());
  }
  return {{"rank", rank_}, {"torsion", tors}};
}

FgAbGroup FgAbGroup::from_json(const nlohmann::json& j) {
  std::vector<Integer> tors;
  for (const auto& t : j.at("torsion")) {
    tors.push_back(t.is_string() ? Integer::parse(t.get<std::string>()) : Integer(t.get<std::int64_t>()));
  }
  return FgAbGroup(j.at("rank").get<std::size_t>(), std::move(tors));
}

std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.str(); }

namespace {

bool in_relation_lattice(const FgAbGroup& g, const std::vector<Integer>& x) {
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (!x[i].is_zero()) return false;
  for (std::size_t i = 0; i < g.torsion().size(); ++i)
    if (!floor_divmod(x[g.rank() + i], g.torsion()[i]).rem.is_zero()) return false;
  return true;
}

/// Lattice in Z^n spanned by columns of `gens` together with the group relations.
IntMatrix lattice_with_relations(const FgAbGroup& g, const IntMatrix& gens) {
  IntMatrix all = IntMatrix::hcat(gens.cols() == 0 ? IntMatrix(g.generator_count(), 0) : gens,
                                  g.relation_matrix());
  return column_hermite_basis(all);
}

/// Basis of {c : f * m * c lies in the relation lattice of `target`}, mapped through m.
IntMatrix preimage_of_relations(const IntMatrix& f, const IntMatrix& m, const FgAbGroup& target) {
  IntMatrix fm = f * m;
  IntMatrix rel = target.relation_matrix();
  for (std::size_t i = 0; i < rel.rows(); ++i)
    for (std::size_t j = 0; j < rel.cols(); ++j) rel(i, j) = -rel(i, j);
  IntMatrix stacked = IntMatrix::hcat(fm, rel);
  IntMatrix ker = integer_kernel(stacked);
  IntMatrix c(m.cols(), ker.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = 0; j < ker.cols(); ++j) c(i, j) = ker(i, j);
  return m * c;
}

}  // namespace

Subgroup::Subgroup(FgAbGroup ambient, const IntMatrix& generators)
    : ambient_(std::move(ambient)), basis_(lattice_with_relations(ambient_, generators)) {
  if (generators.rows() != ambient_.generator_count() && generators.cols() != 0) {
    throw std::invalid_argument("subgroup generators have wrong length");
  }
}

Subgroup Subgroup::whole(const FgAbGroup& g) { return Subgroup(g, IntMatrix::identity(g.generator_count())); }

Subgroup Subgroup::trivial(const FgAbGroup& g) { return Subgroup(g, IntMatrix(g.generator_count(), 0)); }

bool Subgroup::contains(const std::vector<Integer>& element) const {
  if (basis_.cols() == 0) {
    return std::all_of(element.begin(), element.end(), [](const Integer& v) { return v.is_zero(); });
  }
  return solve_integer(basis_, element).has_value();
}

bool Subgroup::contains(const Subgroup& other) const {
  for (std::size_t j = 0; j < other.basis_.cols(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

FgAbGroup Subgroup::isomorphism_type() const {
  const std::size_t k = basis_.cols();
  IntMatrix rel = ambient_.relation_matrix();
  // Express each relation generator in the lattice basis.
  IntMatrix coords(k, rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    auto c = solve_integer(basis_, rel.column(j));
    if (!c) throw std::logic_error("relation lattice not contained in subgroup lattice");
    for (std::size_t i = 0; i < k; ++i) coords(i, j) = (*c)[i];
  }
  std::vector<Integer> inv = invariant_factors(coords);
  std::vector<Integer> orders(k, Integer(0));
  for (std::size_t i = 0; i < inv.size(); ++i) orders[i] = inv[i];
  return FgAbGroup::from_cyclic_orders(orders);
}

Homomorphism::Homomorphism(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count()) {
    throw std::invalid_argument("homomorphism matrix shape does not match groups");
  }
  for (std::size_t j = 0; j < matrix_.cols(); ++j) {
    matrix_.set_column(j, target_.normalize(matrix_.column(j)));
  }
  // Torsion generators must map to elements whose order divides theirs.
  for (std::size_t j = source_.rank(); j < source_.generator_count(); ++j) {
    std::vector<Integer> col = matrix_.column(j);
    for (Integer& v : col) v *= source_.generator_order(j);
    if (!in_relation_lattice(target_, col)) {
      throw std::invalid_argument("homomorphism matrix does not respect torsion");
    }
  }
}

Homomorphism Homomorphism::identity(const FgAbGroup& g) {
  return Homomorphism(g, g, IntMatrix::identity(g.generator_count()));
}

Homomorphism Homomorphism::zero(const FgAbGroup& source, const FgAbGroup& target) {
  return Homomorphism(source, target, IntMatrix(target.generator_count(), source.generator_count()));
}

std::vector<Integer> Homomorphism::apply(const std::vector<Integer>& x) const {
  return target_.normalize(matrix_ * x);
}

Homomorphism Homomorphism::compose(const Homomorphism& inner) const {
  if (!(inner.target_ == source_)) throw std::invalid_argument("compose: group mismatch");
  return Homomorphism(inner.source_, target_, matrix_ * inner.matrix_);
}

Subgroup Homomorphism::image() const { return Subgroup(target_, matrix_); }

Subgroup Homomorphism::kernel() const {
  IntMatrix k = preimage_of_relations(matrix_, IntMatrix::identity(source_.generator_count()), target_);
  return Subgroup(source_, k);
}

Subgroup Homomorphism::image_of(const Subgroup& s) const {
  return Subgroup(target_, matrix_ * s.lattice_basis());
}

bool Homomorphism::is_injective() const { return kernel() == Subgroup::trivial(source_); }

bool Homomorphism::is_surjective() const { return image() == Subgroup::whole(target_); }

nlohmann::json Homomorphism::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < matrix_.cols(); ++j) r.push_back(matrix_(i, j).str());
    rows.push_back(r);
  }
  return {{"source", source_.to_json()}, {"target", target_.to_json()}, {"matrix", rows}};
}

Presentation present(const std::vector<Integer>& orders) {
  const std::size_t n = orders.size();
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = abs(orders[i]);
  SmithForm snf = smith_normal_form(r, SmithOptions{true, false});
  std::vector<std::size_t> picked;
  std::vector<Integer> torsion;
  for (std::size_t i = snf.rank; i < n; ++i) picked.push_back(i);
  for (std::size_t i = 0; i < snf.rank; ++i) {
    if (snf.diagonal[i] > Integer(1)) {
      picked.push_back(i);
      torsion.push_back(snf.diagonal[i]);
    }
  }
  Presentation p;
  p.orders = orders;
  p.group = FgAbGroup(n - snf.rank, std::move(torsion));
  p.to_canonical = snf.u.select_rows(picked);
  p.from_canonical = snf.u_inv.select_columns(picked);
  return p;
}

Presentation direct_sum(const std::vector<FgAbGroup>& summands) {
  std::vector<Integer> orders;
  for (const FgAbGroup& g : summands)
    for (std::size_t i = 0; i < g.generator_count(); ++i) orders.push_back(g.generator_order(i));
  return present(orders);
}

FgAbGroup quotient_type(const Subgroup& s, const Subgroup& t) {
  if (!(s.ambient() == t.ambient()) || !s.contains(t)) throw std::invalid_argument("quotient by a non-subgroup");
  const IntMatrix& outer = s.lattice_basis();
  const IntMatrix& inner = t.lattice_basis();
  IntMatrix coords(outer.cols(), inner.cols());
  for (std::size_t j = 0; j < inner.cols(); ++j) {
    auto c = solve_integer(outer, inner.column(j));
    for (std::size_t i = 0; i < outer.cols(); ++i) coords(i, j) = (*c)[i];
  }
  std::vector<Integer> orders(outer.cols(), Integer(0));
  if (coords.cols() > 0) {
    const auto inv = invariant_factors(coords);
    for (std::size_t i = 0; i < inv.size(); ++i) orders[i] = inv[i];
  }
  return FgAbGroup::from_cyclic_orders(orders);
}

bool restricted_is_isomorphism(const Homomorphism& f, const Subgroup& from, const Subgroup& onto) {
  if (!(f.image_of(from) == onto)) return false;
  IntMatrix k = preimage_of_relations(f.matrix(), from.lattice_basis(), f.target());
  for (std::size_t j = 0; j < k.cols(); ++j)
    if (!in_relation_lattice(f.source(), k.column(j))) return false;
  return true;
}

}  // namespace coarse
