#ifndef LID_PHONELIB_HPP
#define LID_PHONELIB_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lid {

// One similar-phone group. The first member is the group's root phone;
// the rest are alternative romanizations that map to the same root index.
struct PhoneGroup {
    std::vector<std::string> members;
};

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

// Root-phone inventory plus similar-phone groups. Indices are 1-based
// (index 0 is reserved for padding); any gram outside every group encodes
// as the out-of-vocabulary index 35. Immutable after construction.
class PhoneticLibrary {
public:
    static constexpr int kRootCount = 31;
    static constexpr int kOovIndex = 35;

    PhoneticLibrary(std::vector<std::string> roots, std::vector<PhoneGroup> groups);

    const std::vector<std::string>& roots() const { return roots_; }
    const std::vector<PhoneGroup>& groups() const { return groups_; }
    int oov_index() const { return kOovIndex; }

    // 1-based root index of the group containing `gram`, or nullopt.
    std::optional<int> lookup(std::string_view gram) const;

private:
    std::vector<std::string> roots_;
    std::vector<PhoneGroup> groups_;
    std::unordered_map<std::string, int> member_index_;
};

// The library exactly as published: 31 roots, 31 groups, 66 members.
PhoneticLibrary default_library();

// Line-oriented format: '#' starts a comment, one group per line as
// comma-separated members, first member is the root. Line order defines
// root indices 1..31. Throws LidError on parse or validation failure.
PhoneticLibrary load_library(std::istream& in);
PhoneticLibrary load_library_file(const std::string& path);

void serialize_library(const PhoneticLibrary& lib, std::ostream& out);

// Empty report iff every library invariant holds.
ValidationReport validate_library(const PhoneticLibrary& lib);

} // namespace lid

#endif
