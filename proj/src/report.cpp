#include <sstream>

#include "qh/report.hpp"

namespace qh {

std::string Report::text() const {
    std::ostringstream os;
    for (const auto& e : entries_) {
        if (e.advisory) {
            os << "INFO " << e.name;
            if (!e.witness.empty()) os << ": " << e.witness;
        } else if (e.pass) {
            os << "PASS " << e.name;
        } else {
            os << "FAIL " << e.name;
            if (!e.witness.empty()) os << ": " << e.witness;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace qh
