#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wracah/branching.hpp"

namespace wracah {

struct SchemeOptions {
  double tolerance = kDefaultTolerance;
  double element_tolerance = kElementTolerance;
  HalfInt irrep_scan_max = HalfInt(8);
  unsigned table_seed = 20240811u;
  unsigned split_seed = 97531u;
};

// A group together with everything downstream constructions need: character
// table, canonical irrep matrices, and memoized restrictions / branching
// rules / reduction tables / couplings. Cached lookups are guarded by a
// mutex; the underlying constructions are deterministic, so concurrent reads
// agree with single-threaded results.
class Scheme {
 public:
  explicit Scheme(DoubleGroup group, const SchemeOptions& options = {});
  static Scheme from_preset(const std::string& name,
                            const SchemeOptions& options = {});

  // Movable (caches travel along); moving while another thread holds a
  // reference is undefined, as usual.
  Scheme(Scheme&&) = default;
  Scheme& operator=(Scheme&&) = default;

  const DoubleGroup& group() const { return group_; }
  const CharacterTable& table() const { return table_; }
  const std::vector<Irrep>& irreps() const { return irreps_; }
  const Irrep& irrep(int r) const { return irreps_[r]; }
  int num_irreps() const { return table_.num_irreps(); }
  double tolerance() const { return options_.tolerance; }
  const SchemeOptions& options() const { return options_; }

  // Throws Error(invalid_label) for unknown names (canonical or alias).
  int irrep_index(const std::string& name) const;

  const std::vector<Eigen::MatrixXcd>& restriction(HalfInt j) const;
  const BranchingRule& branching(HalfInt j) const;
  const ReductionTable& reduction(HalfInt j) const;
  const std::vector<GroupCG>& coupling(int irrep1, int irrep2) const;

 private:
  DoubleGroup group_;
  SchemeOptions options_;
  CharacterTable table_;
  std::vector<Irrep> irreps_;

  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
  mutable std::map<int, std::unique_ptr<std::vector<Eigen::MatrixXcd>>> restrictions_;
  mutable std::map<int, std::unique_ptr<BranchingRule>> branchings_;
  mutable std::map<int, std::unique_ptr<ReductionTable>> reductions_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<std::vector<GroupCG>>> couplings_;
};

// Chain-adapted labels: reduce D^j in `parent`, then split every parent block
// under `child` (child must be a subgroup of parent within tol). Columns of
// the result are grouped by child irrep in canonical order; within one child
// irrep, copies are ordered by parent block and residual index, and `a`
// renumbers them 1..mult. Phases follow the same largest-modulus rule as
// reduction_coefficients, so chaining a group with itself reproduces its own
// reduction table exactly.
ChainTable chain_labels(const Scheme& parent, const Scheme& child, HalfInt j,
                        double tol = kDefaultTolerance);

}  // namespace wracah
