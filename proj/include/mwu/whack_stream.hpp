#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mwu/whack.hpp"

namespace mwu {

struct StreamRow {
    std::size_t index = 0;
    std::vector<Entry> entries;  // column order not required
};

// A read-only, re-iterable repository of rows.
class RowStream {
public:
    virtual ~RowStream() = default;
    virtual void restart() = 0;
    virtual std::optional<StreamRow> next() = 0;
};

class MatrixRowStream final : public RowStream {
public:
    explicit MatrixRowStream(const SparseNonnegMatrix& C) : C_(C) {}
    void restart() override { next_ = 0; }
    std::optional<StreamRow> next() override;

private:
    const SparseNonnegMatrix& C_;
    std::size_t next_ = 0;
};

// Re-reads an instance file on every pass; consecutive `C i j v` lines with
// the same i form one row. Nothing but the current row is kept in memory.
class FileRowStream final : public RowStream {
public:
    explicit FileRowStream(std::string path);
    void restart() override;
    std::optional<StreamRow> next() override;

private:
    struct Impl;
    std::string path_;
    std::shared_ptr<Impl> impl_;
};

enum class StreamMode { FullDual, PrimalOnly };
enum class PassResult { Running, Finished, PhaseEnded, PassComplete };

class StreamSolver {
public:
    StreamSolver(std::size_t n, double lambda, double eps, StreamMode mode);

    void begin_pass();
    PassResult consume(const StreamRow& row);  // Running while the pass goes on
    PassResult end_pass();
    PassResult run_pass(RowStream& source);

    bool finished() const { return outcome_.has_value(); }
    const std::optional<Outcome>& outcome() const { return outcome_; }
    std::int64_t passes() const { return passes_; }
    std::int64_t phases() const { return eng_.stats().phases; }
    const WhackEngine& engine() const { return eng_; }

    // Words of solver state alive between rows (x-hat, counters, scalars).
    std::size_t live_words() const;
    std::size_t peak_live_words() const { return peak_words_; }

private:
    StreamMode mode_;
    WhackEngine eng_;
    std::optional<Outcome> outcome_;
    PassResult pass_state_ = PassResult::Running;
    std::int64_t passes_ = 0;
    std::size_t peak_words_ = 0;
};

struct StreamRun {
    Outcome outcome;
    std::int64_t passes = 0;
    std::int64_t phases = 0;
    std::size_t peak_live_words = 0;
    WhackStats stats;
};

StreamRun solve_stream(RowStream& source, std::size_t n, double lambda, double eps, StreamMode mode);

}  // namespace mwu
