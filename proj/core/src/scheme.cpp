#include "wracah/scheme.hpp"

#include <cmath>

#include "wracah/error.hpp"

namespace wracah {

Scheme::Scheme(DoubleGroup group, const SchemeOptions& options)
    : group_(std::move(group)), options_(options) {
  table_ = character_table(group_, options_.tolerance, options_.table_seed);
  irreps_ = irrep_matrices(group_, table_, options_.irrep_scan_max,
                           options_.tolerance, options_.split_seed);
}

Scheme Scheme::from_preset(const std::string& name,
                           const SchemeOptions& options) {
  return Scheme(preset_group(name), options);
}

int Scheme::irrep_index(const std::string& name) const {
  int r = table_.find(name);
  if (r < 0)
    fail(Errc::invalid_label,
         "unknown irrep '" + name + "' for group " + group_.name);
  return r;
}

const std::vector<Eigen::MatrixXcd>& Scheme::restriction(HalfInt j) const {
  std::scoped_lock lock(*mutex_);
  auto& slot = restrictions_[j.twice()];
  if (!slot)
    slot = std::make_unique<std::vector<Eigen::MatrixXcd>>(
        restriction_matrices(group_, j, options_.tolerance));
  return *slot;
}

const BranchingRule& Scheme::branching(HalfInt j) const {
  std::scoped_lock lock(*mutex_);
  auto& slot = branchings_[j.twice()];
  if (!slot)
    slot = std::make_unique<BranchingRule>(
        branching_multiplicities(group_, table_, j));
  return *slot;
}

const ReductionTable& Scheme::reduction(HalfInt j) const {
  std::scoped_lock lock(*mutex_);
  auto& slot = reductions_[j.twice()];
  if (!slot)
    slot = std::make_unique<ReductionTable>(reduction_coefficients(
        group_, table_, irreps_, j, options_.tolerance));
  return *slot;
}

const std::vector<GroupCG>& Scheme::coupling(int irrep1, int irrep2) const {
  std::scoped_lock lock(*mutex_);
  auto& slot = couplings_[{irrep1, irrep2}];
  if (!slot)
    slot = std::make_unique<std::vector<GroupCG>>(group_cg(
        group_, table_, irreps_, irrep1, irrep2, options_.tolerance));
  return *slot;
}

ChainTable chain_labels(const Scheme& parent, const Scheme& child, HalfInt j,
                        double tol) {
  if (!is_subgroup(child.group(), parent.group(),
                   child.options().element_tolerance))
    fail(Errc::not_a_subgroup,
         child.group().name + " is not a subgroup of " + parent.group().name);

  const ReductionTable& high = parent.reduction(j);
  const auto& low_rep = child.restriction(j);
  const DoubleGroup& lg = child.group();
  const int n = j.twice() + 1;

  // Accumulate per child irrep so the final column order is canonical.
  struct Copy {
    Eigen::MatrixXcd block;
    ChainParent parent;
  };
  std::vector<std::vector<Copy>> copies(child.num_irreps());

  for (int r = 0; r < child.num_irreps(); ++r) {
    const Irrep& irrep = child.irrep(r);
    const int d = irrep.dim;
    std::vector<Eigen::MatrixXcd> p_g0(d);
    for (int g = 0; g < d; ++g) {
      Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
      for (int e = 0; e < lg.order(); ++e)
        acc += std::conj(irrep.matrices[e](g, 0)) * low_rep[e];
      p_g0[g] = acc * (static_cast<double>(d) / lg.order());
    }

    // Walk the parent blocks in their own column order; project each block.
    std::size_t col = 0;
    while (col < high.labels.size()) {
      const StateLabel& head = high.labels[col];
      const int dh = parent.irrep(head.irrep).dim;
      int residual = 0;

      std::vector<Eigen::VectorXcd> kept;
      for (int s = 0; s < dh; ++s) {
        Eigen::VectorXcd v =
            p_g0[0] * high.coeffs.col(static_cast<int>(col) + s);
        // Seeds from other parent blocks live in orthogonal invariant
        // subspaces, so orthogonalization is only needed within this block.
        for (const auto& k : kept) v -= k.dot(v) * k;
        double norm = v.norm();
        if (norm > 1e-6) kept.push_back(v / norm);
      }

      for (const auto& seed : kept) {
        Copy copy;
        copy.block.resize(n, d);
        copy.block.col(0) = seed;
        for (int g = 1; g < d; ++g) copy.block.col(g) = p_g0[g] * seed;
        Complex phase;
        {
          int arg = 0;
          double best = -1.0;
          for (int i = 0; i < n; ++i)
            if (std::abs(copy.block.col(0)(i)) > best + 1e-14) {
              best = std::abs(copy.block.col(0)(i));
              arg = i;
            }
          Complex z = copy.block.col(0)(arg);
          phase = std::conj(z) / std::abs(z);
        }
        copy.block *= phase;
        copy.parent.parent_irrep = head.irrep;
        copy.parent.parent_copy = head.a;
        copy.parent.residual = ++residual;
        copies[r].push_back(std::move(copy));
      }
      col += dh;
    }
  }

  ChainTable out;
  out.table.j = j;
  out.table.rule = child.branching(j);
  out.table.coeffs.resize(n, n);
  int next_col = 0;
  for (int r = 0; r < child.num_irreps(); ++r) {
    const int d = child.irrep(r).dim;
    if (static_cast<int>(copies[r].size()) != out.table.rule.multiplicity[r])
      fail(Errc::projection_deficiency,
           "chain projection found " + std::to_string(copies[r].size()) +
               " copies of " + child.table().labels[r] + ", branching expects " +
               std::to_string(out.table.rule.multiplicity[r]));
    int a = 0;
    for (const auto& copy : copies[r]) {
      ++a;
      for (int g = 0; g < d; ++g) {
        out.table.coeffs.col(next_col + g) = copy.block.col(g);
        out.table.labels.push_back(StateLabel{j, a, r, g + 1});
        out.parents.push_back(copy.parent);
      }
      next_col += d;
    }
  }

  double unitary = (out.table.coeffs.adjoint() * out.table.coeffs -
                    Eigen::MatrixXcd::Identity(n, n))
                       .cwiseAbs()
                       .maxCoeff();
  if (unitary > tol)
    fail(Errc::inconsistent_table,
         "chain-adapted table of D^" + j.str() + " is not unitary");
  return out;
}

}  // namespace wracah
