#include "vcsat/io.hpp"
#include "vcsat/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace vcsat {

namespace {

std::string trimmed(const std::string& line) {
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    return line.substr(b, e - b);
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& why) {
    throw InvalidInputError("family text line " + std::to_string(lineno) + ": " + why);
}

// Parse a full non-negative integer; returns false on any stray character.
bool parse_int(const std::string& s, int& out) {
    if (s.empty() || s.size() > 9) return false;
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

} // namespace

std::string serialize_family(const SetFamily& fam) {
    std::string out = "n=" + std::to_string(fam.ground_size()) + "\n";
    for (std::uint64_t m : fam.masks()) {
        if (m == 0) {
            out += "-\n";
            continue;
        }
        bool first = true;
        for (int e : mask_elements(m)) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        }
        out += "\n";
    }
    return out;
}

SetFamily parse_family(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    int n = 0;
    std::vector<std::uint64_t> members;

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trimmed(raw);
        if (line.empty()) continue;

        if (!have_header) {
            if (line.rfind("n=", 0) != 0)
                bad_line(lineno, "expected header \"n=<int>\" first");
            if (!parse_int(line.substr(2), n) || n > 64)
                bad_line(lineno, "ground size must be an integer in [0,64]");
            have_header = true;
            continue;
        }

        std::uint64_t mask = 0;
        if (line != "-") {
            int prev = 0;
            std::size_t pos = 0;
            while (pos <= line.size()) {
                const std::size_t comma = std::min(line.find(',', pos), line.size());
                int e = 0;
                if (!parse_int(line.substr(pos, comma - pos), e))
                    bad_line(lineno, "malformed element list \"" + line + "\"");
                if (e < 1 || e > n)
                    bad_line(lineno, "element " + std::to_string(e) + " outside [1," +
                                         std::to_string(n) + "]");
                if (e <= prev)
                    bad_line(lineno, "elements must be strictly ascending");
                mask |= std::uint64_t{1} << (e - 1);
                prev = e;
                pos = comma + 1;
            }
        }
        if (!members.empty() && mask <= members.back())
            bad_line(lineno, members.back() == mask
                                 ? "duplicate member"
                                 : "members out of canonical order");
        members.push_back(mask);
    }
    if (!have_header) throw InvalidInputError("family text is missing the \"n=\" header");
    return SetFamily::from_masks(n, std::move(members));
}

SetFamily read_family_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open family file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

void write_family_file(const SetFamily& fam, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write family file: " + path);
    out << serialize_family(fam);
    if (!out.flush()) throw InvalidInputError("write failed: " + path);
}

} // namespace vcsat
