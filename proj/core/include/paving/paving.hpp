#pragma once
//
// Riesz bounds and compressed norms over index subsets, partition
// enumeration, exhaustive and sampled partition search, and the explicit
// witness vectors that upper-bound the best Riesz constant of the stacked
// DFT families for every partition.
//

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paving/constructions.hpp"
#include "paving/frame.hpp"
#include "paving/matrix.hpp"

namespace paving {

// Assignment of M indices to r labeled parts. Empty parts are allowed.
class Partition {
public:
    // Throws InvalidArgument if any label is >= num_parts.
    Partition(std::size_t num_parts, std::vector<std::size_t> labels);

    std::size_t num_parts() const noexcept { return num_parts_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::size_t>& labels() const noexcept { return labels_; }

    // Index sets in ascending order, one per part.
    std::vector<std::vector<std::size_t>> parts() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t num_parts_;
    std::vector<std::size_t> labels_;
};

// lambda_min of the Gram matrix of the selected rows: the optimal delta in
// ||sum a_i f_i||^2 >= delta sum |a_i|^2.
double riesz_lower_bound(const FrameFamily& f, std::span<const std::size_t> subset);

// Largest singular value of the principal submatrix of t on subset.
double paving_norm(const ComplexMatrix& t, std::span<const std::size_t> subset);

inline constexpr std::uint64_t kDefaultPartitionBudget = std::uint64_t{1} << 24;

struct EnumerationOptions {
    std::uint64_t budget = kDefaultPartitionBudget;
    // Emit one representative per set partition (restricted-growth labels,
    // index 0 always in part 0) instead of every labeled assignment.
    bool canonical = false;
};

// Number of labeled assignments r^M. Throws ResourceLimit above budget.
std::uint64_t assignment_count(std::size_t m, std::size_t r, std::uint64_t budget);

// The counter-th labeled assignment in lexicographic order (index 0 is the
// most significant base-r digit).
Partition assignment_from_counter(std::uint64_t counter, std::size_t m, std::size_t r);

// Streams partitions lazily:
//
//   PartitionStream stream(m, r);
//   while (auto p = stream.next()) { ... }
//
// Labeled mode may be restricted to a counter range for sharding.
class PartitionStream {
public:
    PartitionStream(std::size_t m, std::size_t r, EnumerationOptions options = {});

    // Limits a labeled stream to counters in [begin, end).
    void restrict_range(std::uint64_t begin, std::uint64_t end);

    std::optional<Partition> next();
    std::uint64_t total() const noexcept { return total_; }

private:
    bool advance_canonical();

    std::size_t m_;
    std::size_t r_;
    EnumerationOptions options_;
    std::uint64_t total_ = 0;
    std::uint64_t counter_ = 0;
    std::uint64_t end_ = 0;
    bool started_ = false;
    bool done_ = false;
    std::vector<std::size_t> labels_;
};

// All labeled assignments (or canonical partitions) materialized. Small M only.
std::vector<Partition> enumerate_partitions(std::size_t m, std::size_t r,
                                            EnumerationOptions options = {});

// Precomputed full Gram matrix so every part bound is one small eigenproblem.
class PartEvaluator {
public:
    explicit PartEvaluator(const FrameFamily& f);

    const FrameFamily& family() const noexcept { return *family_; }
    const HermitianMatrix& gram_matrix() const noexcept { return gram_; }

    double part_bound(std::span<const std::size_t> subset) const;
    // Per-part bounds (absent for empty parts) and their minimum over the
    // nonempty parts.
    std::vector<std::optional<double>> part_bounds(const Partition& p) const;
    double min_part_bound(const Partition& p) const;

private:
    const FrameFamily* family_;
    HermitianMatrix gram_;
};

struct SearchOptions {
    std::uint64_t budget = kDefaultPartitionBudget;
    // Worker threads for sharded enumeration; 0 picks hardware concurrency.
    // Results do not depend on this.
    unsigned threads = 1;
};

struct BestPartition {
    Partition partition;
    double value;  // max over partitions of min over nonempty parts
};

// Exhaustive search; ties resolve to the first partition in enumeration order.
BestPartition best_partition_riesz(const FrameFamily& f, std::size_t r, SearchOptions options = {});

struct Witness {
    std::size_t k = 0;                  // 1-based block, bound delta_k
    std::size_t part = 0;               // 0-based part j
    std::vector<std::size_t> indices;   // rows of A_j within block k (global)
    std::vector<Complex> coefficients;  // unit l2 norm, one per index
    double achieved_norm_sq = 0.0;      // ||sum a_i f_i||^2
    double band_residual = 0.0;         // ||band^T a||
    double bound = 0.0;                 // delta_k
};

// For each block k < r, takes the part with the most rows in block k (ties to
// the smallest part), builds a unit coefficient vector on those rows that
// annihilates the block's band columns, and returns the witness with the
// smallest achieved norm. f must be build_nonpavable_general(schedule.r,
// schedule.n).
Witness witness_coefficients(const FrameFamily& f, const DeltaSchedule& schedule,
                             const Partition& partition);

struct RieszCertificate {
    Partition partition;
    std::vector<std::optional<double>> part_bounds;
    double min_part_bound = 0.0;
    std::optional<Witness> witness;
};

struct CertifyMode {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;

    static CertifyMode exhaustive() { return {}; }
    static CertifyMode sampled(std::uint64_t count, std::uint64_t seed) {
        return {Kind::sampled, count, seed};
    }
    std::string name() const { return kind == Kind::exhaustive ? "exhaustive" : "sampled"; }
};

// The sample-th uniformly random labeled assignment for a seed.
// Deterministic across platforms.
Partition sampled_partition(std::uint64_t seed, std::uint64_t sample, std::size_t m,
                            std::size_t r);

struct CertificationSummary {
    std::size_t r = 0;
    std::size_t n = 0;
    std::string mode;
    std::uint64_t partitions_checked = 0;
    double worst_min_part_bound = 0.0;
    std::vector<double> deltas;
    double bound = 0.0;  // max of delta_1..delta_{r-1}
    bool vacuous = false;
    RieszCertificate worst;
};

// Checks, for every enumerated or sampled partition, that the min-part Riesz
// bound is at most max_{k<r} delta_k + 1e-8 and that a witness exists with
// achieved <= delta_k + 1e-8 and achieved >= its part's Riesz bound - 1e-10.
// Throws CertificationFailure on the first offending partition in order.
CertificationSummary certify_nonpavable(const FrameFamily& f, std::size_t r, std::size_t n,
                                        CertifyMode mode, SearchOptions options = {});

}  // namespace paving
