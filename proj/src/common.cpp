#include "omlbell/common.hpp"

#include <algorithm>

namespace omlbell {

std::size_t ValidationReport::count(const std::string& axiom) const {
    return static_cast<std::size_t>(
        std::count_if(failures.begin(), failures.end(), [&](const Failure& f) { return f.axiom == axiom; }));
}

std::string ValidationReport::summary() const {
    if (failures.empty()) return "valid";
    const Failure& f = failures.front();
    std::string out = f.axiom + " fails at (";
    for (std::size_t i = 0; i < f.witness.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(f.witness[i]);
    }
    out += ")";
    if (!f.detail.empty()) out += ": " + f.detail;
    if (failures.size() > 1) out += " [+" + std::to_string(failures.size() - 1) + " more]";
    return out;
}

}  // namespace omlbell
