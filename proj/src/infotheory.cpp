#include "resqu/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "resqu/error.hpp"

namespace resqu::info {

namespace {

// -p log2 p with the 0 log 0 = 0 convention.
double surprisal_term(double p) noexcept {
    return p < kZeroMass ? 0.0 : -p * std::log2(p);
}

}  // namespace

JointPmf2x2::JointPmf2x2(const Cells& cells) : cells_(cells) {
    double total = 0.0;
    for (const auto& row : cells_) {
        for (double p : row) {
            if (!std::isfinite(p) || p < 0.0) {
                std::ostringstream msg;
                msg << "joint cell " << p << " is not a probability";
                throw Error(ErrorCode::validation, msg.str());
            }
            total += p;
        }
    }
    if (std::abs(total - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "joint cells sum to " << total << ", expected 1";
        throw Error(ErrorCode::validation, msg.str());
    }
}

JointPmf2x2 JointPmf2x2::from_counts(const std::array<std::array<long long, 2>, 2>& counts) {
    long long n = 0;
    for (const auto& row : counts) {
        for (long long k : row) {
            if (k < 0) throw Error(ErrorCode::validation, "negative count in contingency table");
            n += k;
        }
    }
    if (n == 0) throw Error(ErrorCode::validation, "empty contingency table");
    Cells cells{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) cells[x][y] = static_cast<double>(counts[x][y]) / static_cast<double>(n);
    return JointPmf2x2(cells);
}

JointPmf2x2 JointPmf2x2::swapped_indications() const {
    Cells swapped{};
    for (int x = 0; x < 2; ++x) {
        swapped[x][0] = cells_[x][1];
        swapped[x][1] = cells_[x][0];
    }
    return JointPmf2x2(swapped);
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::domain, "binary_entropy requires p in [0,1]");
    }
    return surprisal_term(p) + surprisal_term(1.0 - p);
}

EntropyBundle entropy_bundle(const JointPmf2x2& joint) {
    EntropyBundle h;
    const Response xs[] = {Response::reject, Response::accept};
    const Indication ys[] = {Indication::red, Indication::green};

    for (Response x : xs) h.h_x += surprisal_term(joint.px(x));
    for (Indication y : ys) h.h_y += surprisal_term(joint.py(y));
    for (Response x : xs)
        for (Indication y : ys) h.h_xy += surprisal_term(joint(x, y));

    // H(X|Y) = -sum_y p(y) sum_x p(x|y) log2 p(x|y)
    for (Indication y : ys) {
        const double py = joint.py(y);
        if (py < kZeroMass) continue;
        double inner = 0.0;
        for (Response x : xs) inner += surprisal_term(joint(x, y) / py);
        h.h_x_given_y += py * inner;
    }
    for (Response x : xs) {
        const double px = joint.px(x);
        if (px < kZeroMass) continue;
        double inner = 0.0;
        for (Indication y : ys) inner += surprisal_term(joint(x, y) / px);
        h.h_y_given_x += px * inner;
    }
    return h;
}

double mutual_information(const JointPmf2x2& joint) {
    double mi = 0.0;
    for (int x = 0; x < 2; ++x) {
        const double px = joint.cell(x, 0) + joint.cell(x, 1);
        for (int y = 0; y < 2; ++y) {
            const double p = joint.cell(x, y);
            if (p < kZeroMass) continue;
            const double py = joint.cell(0, y) + joint.cell(1, y);
            mi += p * std::log2(p / (px * py));
        }
    }
    return std::max(mi, 0.0);
}

bool is_independent(const JointPmf2x2& joint) noexcept {
    for (Response x : {Response::reject, Response::accept})
        for (Indication y : {Indication::red, Indication::green})
            if (std::abs(joint(x, y) - joint.px(x) * joint.py(y)) >= kSumTolerance) return false;
    return true;
}

bool is_determined_by_indication(const JointPmf2x2& joint) noexcept {
    for (int y = 0; y < 2; ++y) {
        const int nonzero = (joint.cell(0, y) >= kZeroMass) + (joint.cell(1, y) >= kZeroMass);
        if (nonzero > 1) return false;
    }
    return true;
}

double responsibility(const JointPmf2x2& joint) {
    const double h_x = binary_entropy(std::clamp(joint.px(Response::reject), 0.0, 1.0));
    if (h_x <= 0.0) {
        throw Error(ErrorCode::degenerate_human_distribution,
                    "the human always chooses the same action; responsibility is undefined");
    }
    if (is_independent(joint)) return 1.0;
    if (is_determined_by_indication(joint)) return 0.0;
    // H(X|Y) = H(X) - I(X;Y)
    return std::clamp(1.0 - mutual_information(joint) / h_x, 0.0, 1.0);
}

}  // namespace resqu::info
