#include "lid/phonelib.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "lid/error.hpp"

namespace lid {
namespace {

// Canonical root order; every valid library carries exactly this list.
constexpr std::array<const char*, PhoneticLibrary::kRootCount> kCanonicalRoots = {
    "aa", "i",   "u",   "r",   "e",   "ai",  "o",  "au",
    "ka", "kha", "ga",  "gha", "ca",  "cha", "ja", "jha",
    "ta", "tha", "da",  "dha", "na",  "pa",  "pha", "ba",
    "bha", "ma", "ya",  "ra",  "la",  "sa",  "ha",
};

constexpr const char* kDefaultGroups[PhoneticLibrary::kRootCount] = {
    "aa,a",      "i,ee",    "u,w",    "r,ri",   "e",      "ai,oi",
    "o,oo",      "au,ou,ow", "ka,k",  "kha,kh", "ga,g",   "gha,gh",
    "ca,c",      "cha,ch",  "ja,j,z", "jha,jh", "ta,t",   "tha,th",
    "da,d",      "dha,dh",  "na,n",   "pa,p",   "pha,ph,f", "ba,b",
    "bha,bh,v",  "ma,m",    "ya,y",   "ra,rh",  "la,l",   "sa,s,sh",
    "ha,h",
};

bool is_lower_alpha(std::string_view s) {
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= 'a' && c <= 'z'; });
}

std::vector<std::string> split_members(std::string_view line) {
    std::vector<std::string> members;
    std::size_t start = 0;
    while (start <= line.size()) {
        std::size_t comma = line.find(',', start);
        std::string_view piece = (comma == std::string_view::npos)
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        // trim surrounding whitespace
        while (!piece.empty() && (piece.front() == ' ' || piece.front() == '\t'))
            piece.remove_prefix(1);
        while (!piece.empty() && (piece.back() == ' ' || piece.back() == '\t'))
            piece.remove_suffix(1);
        members.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return members;
}

} // namespace

std::string ValidationReport::to_string() const {
    std::string out;
    for (const auto& v : violations) {
        out += v;
        out += '\n';
    }
    return out;
}

PhoneticLibrary::PhoneticLibrary(std::vector<std::string> roots,
                                 std::vector<PhoneGroup> groups)
    : roots_(std::move(roots)), groups_(std::move(groups)) {
    // Root index of a member is the 1-based position of its group's root
    // in roots_. Built first-wins; duplicates are caught by validation.
    for (const auto& group : groups_) {
        if (group.members.empty()) continue;
        auto root_pos = std::find(roots_.begin(), roots_.end(), group.members.front());
        if (root_pos == roots_.end()) continue;
        int index = static_cast<int>(root_pos - roots_.begin()) + 1;
        for (const auto& member : group.members)
            member_index_.emplace(member, index);
    }
}

std::optional<int> PhoneticLibrary::lookup(std::string_view gram) const {
    auto it = member_index_.find(std::string(gram));
    if (it == member_index_.end()) return std::nullopt;
    return it->second;
}

PhoneticLibrary default_library() {
    std::vector<std::string> roots(kCanonicalRoots.begin(), kCanonicalRoots.end());
    std::vector<PhoneGroup> groups;
    groups.reserve(PhoneticLibrary::kRootCount);
    for (const char* line : kDefaultGroups)
        groups.push_back(PhoneGroup{split_members(line)});
    return PhoneticLibrary(std::move(roots), std::move(groups));
}

PhoneticLibrary load_library(std::istream& in) {
    std::vector<PhoneGroup> groups;
    std::vector<std::string> roots;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view view(line);
        while (!view.empty() && (view.front() == ' ' || view.front() == '\t'))
            view.remove_prefix(1);
        if (view.empty() || view.front() == '#') continue;

        PhoneGroup group{split_members(view)};
        for (const auto& member : group.members) {
            if (member.empty())
                throw LidError(ErrorKind::Data,
                               "phonelib parse error at line " + std::to_string(line_no) +
                                   ": empty member");
            if (!is_lower_alpha(member))
                throw LidError(ErrorKind::Data,
                               "phonelib parse error at line " + std::to_string(line_no) +
                                   ": member '" + member + "' is not lowercase a-z");
        }
        roots.push_back(group.members.front());
        groups.push_back(std::move(group));
    }

    PhoneticLibrary lib(std::move(roots), std::move(groups));
    ValidationReport report = validate_library(lib);
    if (!report.ok())
        throw LidError(ErrorKind::Data, "invalid phonetic library:\n" + report.to_string());
    return lib;
}

PhoneticLibrary load_library_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw LidError(ErrorKind::NoInput, "cannot open phonetic library: " + path);
    return load_library(in);
}

void serialize_library(const PhoneticLibrary& lib, std::ostream& out) {
    out << "# Phonetic library: one similar-phone group per line,\n"
           "# comma-separated, first member is the root phone.\n"
           "# Line order defines root indices 1..31.\n";
    for (const auto& group : lib.groups()) {
        for (std::size_t i = 0; i < group.members.size(); ++i) {
            if (i) out << ',';
            out << group.members[i];
        }
        out << '\n';
    }
}

ValidationReport validate_library(const PhoneticLibrary& lib) {
    ValidationReport report;
    const auto& roots = lib.roots();
    const auto& groups = lib.groups();

    if (roots.size() != PhoneticLibrary::kRootCount)
        report.violations.push_back("root count != 31: got " + std::to_string(roots.size()));
    if (groups.size() != PhoneticLibrary::kRootCount)
        report.violations.push_back("group count != 31: got " + std::to_string(groups.size()));

    for (std::size_t i = 0; i < roots.size() && i < kCanonicalRoots.size(); ++i) {
        if (roots[i] != kCanonicalRoots[i])
            report.violations.push_back("root " + std::to_string(i + 1) + " is '" + roots[i] +
                                        "', expected '" + kCanonicalRoots[i] + "'");
    }

    std::unordered_map<std::string, std::size_t> seen_member;
    std::unordered_map<std::string, int> root_first_count;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& members = groups[g].members;
        if (members.empty()) {
            report.violations.push_back("group " + std::to_string(g + 1) + " is empty");
            continue;
        }
        const std::string& first = members.front();
        if (std::find(roots.begin(), roots.end(), first) == roots.end())
            report.violations.push_back("group " + std::to_string(g + 1) + " first member '" +
                                        first + "' is not a root");
        else
            root_first_count[first] += 1;
        if (g < roots.size() && first != roots[g])
            report.violations.push_back("group " + std::to_string(g + 1) + " first member '" +
                                        first + "' does not match root '" + roots[g] + "'");
        for (const auto& member : members) {
            if (member.empty() || member.size() > 3)
                report.violations.push_back("member '" + member + "' has invalid length");
            if (!is_lower_alpha(member))
                report.violations.push_back("member '" + member + "' contains non a-z characters");
            auto [it, inserted] = seen_member.emplace(member, g);
            if (!inserted)
                report.violations.push_back("member '" + member + "' appears in groups " +
                                            std::to_string(it->second + 1) + " and " +
                                            std::to_string(g + 1));
        }
    }
    for (const auto& root : roots) {
        auto it = root_first_count.find(root);
        if (it == root_first_count.end())
            report.violations.push_back("root '" + root + "' is not the first member of any group");
        else if (it->second > 1)
            report.violations.push_back("root '" + root + "' heads more than one group");
    }
    return report;
}

} // namespace lid
