#include "mwu/whack_stream.hpp"

#include <fstream>
#include <sstream>

namespace mwu {

std::optional<StreamRow> MatrixRowStream::next() {
    if (next_ >= C_.rows()) return std::nullopt;
    auto r = C_.row(next_);
    StreamRow out{next_, std::vector<Entry>(r.begin(), r.end())};
    ++next_;
    return out;
}

struct FileRowStream::Impl {
    std::ifstream in;
    std::optional<std::pair<std::size_t, Entry>> pending;
    std::size_t line_no = 0;

    std::optional<std::pair<std::size_t, Entry>> read_entry() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ss(line);
            std::string tag;
            if (!(ss >> tag) || tag != "C") continue;
            std::size_t i = 0, j = 0;
            double v = 0.0;
            if (!(ss >> i >> j >> v))
                throw Error(ErrorKind::StreamExhaustedMidRow, "malformed entry at line " + std::to_string(line_no));
            return std::make_pair(i, Entry{j, v});
        }
        return std::nullopt;
    }
};

FileRowStream::FileRowStream(std::string path) : path_(std::move(path)) { restart(); }

void FileRowStream::restart() {
    impl_ = std::make_shared<Impl>();
    impl_->in.open(path_);
    if (!impl_->in) throw Error(ErrorKind::ParseError, "cannot open " + path_);
}

std::optional<StreamRow> FileRowStream::next() {
    if (!impl_->pending) impl_->pending = impl_->read_entry();
    if (!impl_->pending) return std::nullopt;
    StreamRow row{impl_->pending->first, {}};
    while (impl_->pending && impl_->pending->first == row.index) {
        if (impl_->pending->second.value != 0.0) row.entries.push_back(impl_->pending->second);
        impl_->pending = impl_->read_entry();
    }
    return row;
}

StreamSolver::StreamSolver(std::size_t n, double lambda, double eps, StreamMode mode)
    : mode_(mode), eng_(n, lambda, eps, rounds_for(n, lambda, eps), mode == StreamMode::FullDual) {
    peak_words_ = live_words();
}

std::size_t StreamSolver::live_words() const {
    // x-hat, then W, t, T, eps, lambda and the weight scale.
    return eng_.weights().size() + eng_.counts().size() + 6;
}

void StreamSolver::begin_pass() {
    if (finished()) return;
    ++passes_;
    pass_state_ = PassResult::Running;
    eng_.start_phase();
}

PassResult StreamSolver::consume(const StreamRow& row) {
    if (finished() || pass_state_ != PassResult::Running) return pass_state_;
    if (mode_ == StreamMode::FullDual) eng_.ensure_rows(row.index + 1);
    if (eng_.violated(row.entries)) {
        eng_.enforce(row.index, row.entries);
        if (eng_.exhausted()) {
            outcome_ = mode_ == StreamMode::FullDual ? Outcome{OutcomeTag::PackingDual, eng_.dual()}
                                                      : Outcome{OutcomeTag::Null, {}};
            pass_state_ = PassResult::Finished;
        } else if (eng_.weight_jumped()) {
            pass_state_ = PassResult::PhaseEnded;
        }
    }
    peak_words_ = std::max(peak_words_, live_words());
    return pass_state_;
}

PassResult StreamSolver::end_pass() {
    if (pass_state_ == PassResult::Running && !finished()) {
        outcome_ = Outcome{OutcomeTag::CoveringPrimal, eng_.normalized()};
        pass_state_ = PassResult::PassComplete;
    }
    return pass_state_;
}

PassResult StreamSolver::run_pass(RowStream& source) {
    begin_pass();
    source.restart();
    while (auto row = source.next())
        if (consume(*row) != PassResult::Running) break;
    return end_pass();
}

StreamRun solve_stream(RowStream& source, std::size_t n, double lambda, double eps, StreamMode mode) {
    StreamSolver solver(n, lambda, eps, mode);
    while (!solver.finished()) solver.run_pass(source);
    StreamRun run;
    run.outcome = *solver.outcome();
    run.passes = solver.passes();
    run.phases = solver.phases();
    run.peak_live_words = solver.peak_live_words();
    run.stats = solver.engine().stats();
    return run;
}

}  // namespace mwu
