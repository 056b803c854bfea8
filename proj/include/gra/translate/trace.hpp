#pragma once

#include <string>
#include <vector>

namespace gra::translate {

// Step log filled by the translators when requested.
class Trace {
public:
    void step(std::string line) { lines_.push_back(std::move(line)); }
    const std::vector<std::string>& lines() const noexcept { return lines_; }
    std::string text() const {
        std::string out;
        for (const auto& l : lines_) out += l + "\n";
        return out;
    }

private:
    std::vector<std::string> lines_;
};

}  // namespace gra::translate
