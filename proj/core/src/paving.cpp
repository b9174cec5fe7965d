#include "paving/paving.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "paving/errors.hpp"

namespace paving {

Partition::Partition(std::size_t num_parts, std::vector<std::size_t> labels)
    : num_parts_(num_parts), labels_(std::move(labels)) {
    if (num_parts_ == 0) throw InvalidArgument("a partition needs at least one part");
    for (std::size_t l : labels_) {
        if (l >= num_parts_) throw InvalidArgument("partition label out of range");
    }
}

std::vector<std::vector<std::size_t>> Partition::parts() const {
    std::vector<std::vector<std::size_t>> out(num_parts_);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
    return out;
}

double riesz_lower_bound(const FrameFamily& f, std::span<const std::size_t> subset) {
    if (subset.empty()) throw InvalidArgument("riesz_lower_bound: empty subset");
    return hermitian_extremal_eig(gram(select_rows(f.vectors(), subset)), Extremal::min);
}

double paving_norm(const ComplexMatrix& t, std::span<const std::size_t> subset) {
    if (!t.is_square()) throw InvalidArgument("paving_norm: operator must be square");
    if (subset.empty()) throw InvalidArgument("paving_norm: empty subset");
    const ComplexMatrix s = principal_submatrix(t, subset);
    // gram(adjoint(s)) = S^* S.
    const double top = hermitian_extremal_eig(gram(adjoint(s)), Extremal::max);
    return std::sqrt(std::max(top, 0.0));
}

// ---------------------------------------------------------------------------
// enumeration

namespace {

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (total > budget / std::max<std::size_t>(base, 1)) {
            throw ResourceLimit(std::to_string(base) + "^" + std::to_string(exponent) +
                                    " assignments exceed the partition budget of " +
                                    std::to_string(budget),
                                budget);
        }
        total *= base;
    }
    if (total > budget) {
        throw ResourceLimit("assignment count exceeds the partition budget of " +
                                std::to_string(budget),
                            budget);
    }
    return total;
}

// Number of set partitions of m items into at most r blocks.
std::uint64_t canonical_count(std::size_t m, std::size_t r) {
    // stirling[k] = S(i, k) for the current i.
    std::vector<std::uint64_t> stirling(r + 1, 0);
    stirling[0] = 1;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t k = std::min(i, r); k >= 1; --k)
            stirling[k] = k * stirling[k] + stirling[k - 1];
        stirling[0] = 0;
    }
    std::uint64_t total = 0;
    for (std::size_t k = (m == 0 ? 0 : 1); k <= r; ++k) total += stirling[k];
    return total;
}

}  // namespace

std::uint64_t assignment_count(std::size_t m, std::size_t r, std::uint64_t budget) {
    if (r == 0) throw InvalidArgument("partition count needs r >= 1");
    return checked_power(r, m, budget);
}

Partition assignment_from_counter(std::uint64_t counter, std::size_t m, std::size_t r) {
    std::vector<std::size_t> labels(m);
    for (std::size_t i = m; i-- > 0;) {
        labels[i] = static_cast<std::size_t>(counter % r);
        counter /= r;
    }
    return Partition(r, std::move(labels));
}

PartitionStream::PartitionStream(std::size_t m, std::size_t r, EnumerationOptions options)
    : m_(m), r_(r), options_(options), labels_(m, 0) {
    if (r == 0) throw InvalidArgument("partition stream needs r >= 1");
    if (options_.canonical) {
        // Budget applies to what is actually emitted.
        std::uint64_t labeled = 0;
        try {
            labeled = checked_power(r, m, std::numeric_limits<std::uint64_t>::max());
        } catch (const ResourceLimit&) {
            labeled = std::numeric_limits<std::uint64_t>::max();
        }
        total_ = labeled <= options_.budget ? canonical_count(m, r) : 0;
        if (total_ == 0 || total_ > options_.budget) {
            throw ResourceLimit("canonical partitions exceed the partition budget of " +
                                    std::to_string(options_.budget),
                                options_.budget);
        }
    } else {
        total_ = assignment_count(m, r, options_.budget);
    }
    end_ = total_;
}

void PartitionStream::restrict_range(std::uint64_t begin, std::uint64_t end) {
    if (options_.canonical) throw InvalidArgument("canonical streams cannot be sharded");
    if (begin > end || end > total_) throw InvalidArgument("partition range out of bounds");
    counter_ = begin;
    end_ = end;
    started_ = false;
    done_ = false;
}

bool PartitionStream::advance_canonical() {
    // Restricted growth: labels[i] <= 1 + max(labels[0..i-1]), labels < r.
    std::vector<std::size_t> prefix_max(m_, 0);
    for (std::size_t i = 1; i < m_; ++i)
        prefix_max[i] = std::max(prefix_max[i - 1], labels_[i - 1]);
    for (std::size_t i = m_; i-- > 1;) {
        if (labels_[i] + 1 < r_ && labels_[i] <= prefix_max[i]) {
            ++labels_[i];
            std::fill(labels_.begin() + static_cast<std::ptrdiff_t>(i) + 1, labels_.end(), 0);
            return true;
        }
    }
    return false;
}

std::optional<Partition> PartitionStream::next() {
    if (done_) return std::nullopt;
    if (options_.canonical) {
        if (started_ && !advance_canonical()) {
            done_ = true;
            return std::nullopt;
        }
        started_ = true;
        return Partition(r_, labels_);
    }
    if (counter_ >= end_) {
        done_ = true;
        return std::nullopt;
    }
    return assignment_from_counter(counter_++, m_, r_);
}

std::vector<Partition> enumerate_partitions(std::size_t m, std::size_t r,
                                            EnumerationOptions options) {
    PartitionStream stream(m, r, options);
    std::vector<Partition> out;
    out.reserve(stream.total());
    while (auto p = stream.next()) out.push_back(std::move(*p));
    return out;
}

// ---------------------------------------------------------------------------
// part bounds

PartEvaluator::PartEvaluator(const FrameFamily& f) : family_(&f), gram_(gram(f.vectors())) {}

double PartEvaluator::part_bound(std::span<const std::size_t> subset) const {
    if (subset.empty()) throw InvalidArgument("part_bound: empty subset");
    return hermitian_extremal_eig(gram_.principal(subset), Extremal::min);
}

std::vector<std::optional<double>> PartEvaluator::part_bounds(const Partition& p) const {
    if (p.size() != family_->size()) throw InvalidArgument("partition size does not match family");
    std::vector<std::optional<double>> out;
    for (const auto& part : p.parts()) {
        if (part.empty()) {
            out.emplace_back();
        } else {
            out.emplace_back(part_bound(part));
        }
    }
    return out;
}

double PartEvaluator::min_part_bound(const Partition& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& b : part_bounds(p))
        if (b) best = std::min(best, *b);
    return best;
}

// ---------------------------------------------------------------------------
// sharded scans

namespace {

unsigned resolve_threads(unsigned requested, std::uint64_t total) {
    unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    if (total < t) t = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
    return t;
}

// Runs work(begin, end) over contiguous counter shards and returns the
// per-shard results in shard order. Worker exceptions are rethrown.
template <typename Result, typename Work>
std::vector<Result> run_sharded(std::uint64_t total, unsigned threads, Work work) {
    const unsigned shards = resolve_threads(threads, total);
    std::vector<Result> results(shards);
    std::vector<std::exception_ptr> errors(shards);
    auto body = [&](unsigned s) {
        const std::uint64_t begin = total * s / shards;
        const std::uint64_t end = total * (s + 1) / shards;
        try {
            results[s] = work(begin, end);
        } catch (...) {
            errors[s] = std::current_exception();
        }
    };
    if (shards == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned s = 0; s < shards; ++s) pool.emplace_back(body, s);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

struct ShardBest {
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t counter = std::numeric_limits<std::uint64_t>::max();
};

}  // namespace

BestPartition best_partition_riesz(const FrameFamily& f, std::size_t r, SearchOptions options) {
    const std::size_t m = f.size();
    const std::uint64_t total = assignment_count(m, r, options.budget);
    const PartEvaluator eval(f);
    auto shards = run_sharded<ShardBest>(total, options.threads, [&](std::uint64_t b,
                                                                     std::uint64_t e) {
        ShardBest best;
        for (std::uint64_t c = b; c < e; ++c) {
            const double v = eval.min_part_bound(assignment_from_counter(c, m, r));
            if (v > best.value) {
                best.value = v;
                best.counter = c;
            }
        }
        return best;
    });
    ShardBest best;
    for (const auto& s : shards) {
        if (s.value > best.value || (s.value == best.value && s.counter < best.counter)) best = s;
    }
    return {assignment_from_counter(best.counter, m, r), best.value};
}

// ---------------------------------------------------------------------------
// witnesses

Witness witness_coefficients(const FrameFamily& f, const DeltaSchedule& schedule,
                             const Partition& partition) {
    const std::size_t r = schedule.r;
    const std::size_t n = schedule.n;
    const std::size_t block_rows = r * n;
    if (f.size() != r * block_rows || f.dimension() != block_rows) {
        throw InvalidArgument("witness_coefficients: family shape does not match (r, n)");
    }
    if (partition.size() != f.size() || partition.num_parts() != r) {
        throw InvalidArgument("witness_coefficients: partition must assign every row to r parts");
    }
    const BlockLayout layout = block_layout(schedule);
    const ComplexMatrix& vectors = f.vectors();
    const auto& labels = partition.labels();

    std::optional<Witness> best;
    for (std::size_t k = 1; k < r; ++k) {
        const std::size_t row0 = (k - 1) * block_rows;
        std::vector<std::size_t> counts(r, 0);
        for (std::size_t i = row0; i < row0 + block_rows; ++i) ++counts[labels[i]];
        const std::size_t part = static_cast<std::size_t>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        if (counts[part] < n) {
            throw InternalInconsistency("no part holds n rows of block " + std::to_string(k));
        }

        Witness w;
        w.k = k;
        w.part = part;
        w.bound = schedule.delta(k);
        for (std::size_t i = row0; i < row0 + block_rows; ++i)
            if (labels[i] == part) w.indices.push_back(i);
        const std::size_t m = w.indices.size();

        const BlockSpec& spec = layout.blocks[k - 1];
        ComplexMatrix band(m, spec.band_width);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < spec.band_width; ++c)
                band(i, c) = std::conj(vectors(w.indices[i], spec.band_begin() + c));
        // a annihilates the band iff a is orthogonal to range(conj(band)).
        const ComplexMatrix null_basis = orthogonal_complement(band);
        if (null_basis.cols() == 0) {
            throw InternalInconsistency("band block of block " + std::to_string(k) +
                                        " has no null space");
        }

        // Projection of the first usable coordinate axis onto the null space.
        std::size_t axis = 0;
        for (; axis < m; ++axis)
            if (squared_norm(null_basis.row(axis)) > 1e-16) break;
        if (axis == m) throw InternalInconsistency("null space basis is degenerate");
        w.coefficients.assign(m, Complex{});
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < null_basis.cols(); ++l)
                w.coefficients[i] += null_basis(i, l) * std::conj(null_basis(axis, l));
        const double norm = std::sqrt(squared_norm(w.coefficients));
        for (auto& a : w.coefficients) a /= norm;

        std::vector<Complex> combo(block_rows);
        for (std::size_t i = 0; i < m; ++i) {
            const auto row = vectors.row(w.indices[i]);
            for (std::size_t c = 0; c < block_rows; ++c) combo[c] += w.coefficients[i] * row[c];
        }
        w.achieved_norm_sq = squared_norm(combo);
        w.band_residual = std::sqrt(
            squared_norm(std::span<const Complex>(combo).subspan(spec.band_begin(), spec.band_width)));

        if (!best || w.achieved_norm_sq < best->achieved_norm_sq) best = std::move(w);
    }
    if (!best) throw InternalInconsistency("no witness block (r < 2)");
    return *best;
}

// ---------------------------------------------------------------------------
// certification

Partition sampled_partition(std::uint64_t seed, std::uint64_t sample, std::size_t m,
                            std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(sample),
                      static_cast<std::uint32_t>(sample >> 32)};
    std::mt19937_64 engine(seq);
    std::vector<std::size_t> labels(m);
    for (auto& l : labels) l = static_cast<std::size_t>(engine() % r);
    return Partition(r, std::move(labels));
}

namespace {

struct ShardCertify {
    double worst = -std::numeric_limits<double>::infinity();
    std::uint64_t worst_counter = std::numeric_limits<std::uint64_t>::max();
    std::optional<std::uint64_t> failure_counter;
    std::string failure;
};

// Empty string when the partition passes.
std::string check_partition(const PartEvaluator& eval, const DeltaSchedule& schedule,
                            double bound, const Partition& p, double& min_part) {
    const auto bounds = eval.part_bounds(p);
    min_part = std::numeric_limits<double>::infinity();
    for (const auto& b : bounds)
        if (b) min_part = std::min(min_part, *b);
    if (min_part > bound + 1e-8) {
        return "min-part Riesz bound " + std::to_string(min_part) + " exceeds " +
               std::to_string(bound);
    }
    const Witness w = witness_coefficients(eval.family(), schedule, p);
    if (w.achieved_norm_sq > w.bound + 1e-8) {
        return "witness achieved " + std::to_string(w.achieved_norm_sq) + " exceeds delta_" +
               std::to_string(w.k);
    }
    if (w.achieved_norm_sq < *bounds[w.part] - 1e-10) {
        return "witness achieved " + std::to_string(w.achieved_norm_sq) +
               " is below the Riesz bound of its part";
    }
    return {};
}

}  // namespace

CertificationSummary certify_nonpavable(const FrameFamily& f, std::size_t r, std::size_t n,
                                        CertifyMode mode, SearchOptions options) {
    const DeltaSchedule schedule = delta_schedule(r, n);
    if (f.size() != r * r * n || f.dimension() != r * n) {
        throw InvalidArgument("certify_nonpavable: family shape does not match (r, n)");
    }
    const double bound = *std::max_element(schedule.deltas.begin(), schedule.deltas.end() - 1);
    const std::size_t m = f.size();
    const bool exhaustive = mode.kind == CertifyMode::Kind::exhaustive;
    const std::uint64_t total = exhaustive ? assignment_count(m, r, options.budget) : mode.count;

    auto make = [&](std::uint64_t c) {
        return exhaustive ? assignment_from_counter(c, m, r) : sampled_partition(mode.seed, c, m, r);
    };

    const PartEvaluator eval(f);
    auto shards = run_sharded<ShardCertify>(total, options.threads, [&](std::uint64_t b,
                                                                        std::uint64_t e) {
        ShardCertify s;
        for (std::uint64_t c = b; c < e; ++c) {
            double min_part = 0.0;
            std::string failure = check_partition(eval, schedule, bound, make(c), min_part);
            if (!failure.empty()) {
                s.failure_counter = c;
                s.failure = std::move(failure);
                break;
            }
            if (min_part > s.worst) {
                s.worst = min_part;
                s.worst_counter = c;
            }
        }
        return s;
    });

    ShardCertify merged;
    for (auto& s : shards) {
        if (s.failure_counter) {
            const Partition p = make(*s.failure_counter);
            throw CertificationFailure(s.failure, p.labels());
        }
        if (s.worst > merged.worst || (s.worst == merged.worst && s.worst_counter < merged.worst_counter))
            merged = s;
    }

    CertificationSummary out{.r = r,
                             .n = n,
                             .mode = mode.name(),
                             .partitions_checked = total,
                             .worst_min_part_bound = 0.0,
                             .deltas = schedule.deltas,
                             .bound = bound,
                             .vacuous = schedule.vacuous(),
                             .worst = {Partition(r, std::vector<std::size_t>(m, 0)), {}, 0.0, {}}};
    if (total == 0) return out;
    const Partition worst = make(merged.worst_counter);
    out.worst_min_part_bound = merged.worst;
    out.worst.part_bounds = eval.part_bounds(worst);
    out.worst.min_part_bound = merged.worst;
    out.worst.witness = witness_coefficients(f, schedule, worst);
    out.worst.partition = worst;
    return out;
}

}  // namespace paving
