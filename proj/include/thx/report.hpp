#pragma once

#include <string>
#include <vector>

namespace thx {

// One named verification item. Counts are kept for every instance swept;
// the witness records the first failure only.
struct Check {
    std::string name;
    long passed = 0;
    long failed = 0;
    long skipped = 0;
    std::string witness;

    bool ok() const { return failed == 0; }

    void pass() { ++passed; }
    void skip() { ++skipped; }
    void fail(const std::string& w)
    {
        if (failed == 0)
            witness = w;
        ++failed;
    }
    void require(bool cond, const std::string& w)
    {
        if (cond)
            pass();
        else
            fail(w);
    }
};

struct VerificationReport {
    std::vector<Check> checks;

    Check& add(const std::string& name)
    {
        checks.push_back(Check{name});
        return checks.back();
    }

    bool all_ok() const
    {
        for (const auto& c : checks)
            if (!c.ok())
                return false;
        return true;
    }

    void append(const VerificationReport& other)
    {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }
};

} // namespace thx
