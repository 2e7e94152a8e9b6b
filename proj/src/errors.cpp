#include "collinear/errors.hpp"

#include <sstream>

namespace collinear {

namespace {

std::string rank_message(const std::vector<std::string>& dependent, double ratio) {
    std::ostringstream out;
    out << "complete multicollinearity: columns {";
    for (std::size_t i = 0; i < dependent.size(); ++i) {
        out << (i ? ", " : "") << dependent[i];
    }
    out << "} are linearly dependent (singular value ratio " << ratio << ")";
    return out.str();
}

std::string condition_message(double cond) {
    std::ostringstream out;
    out << "structural collinearity in B: condition number " << cond << " exceeds 1e12";
    return out.str();
}

}  // namespace

RankDeficientError::RankDeficientError(std::vector<std::string> dependent, double singular_ratio)
    : Error(ErrorKind::numerical, "rank_deficient", rank_message(dependent, singular_ratio)),
      dependent_(std::move(dependent)),
      singular_ratio_(singular_ratio) {}

StructuralCollinearityError::StructuralCollinearityError(double condition_number)
    : Error(ErrorKind::numerical, "structural_collinearity", condition_message(condition_number)),
      condition_number_(condition_number) {}

}  // namespace collinear
