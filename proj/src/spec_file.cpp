// Manifold-spec files: a line-oriented description of (F, T, A, g).
//
//   dimension = 3
//   coordinates = x y z
//   classes = first-class normal      # optional
//   [metric]
//   g 1 1 = (1 + y^2)/4
//   [F]
//   F 2 1 = -1                        # F^2_1, first index contravariant
//   [T]
//   T 3 = 2
//   [A]
//   A 3 = 1/2
//
// Indices are 1-based, omitted components are 0, and a metric entry (i,j)
// also fills (j,i).

#include <fstream>
#include <map>
#include <sstream>

#include "acm/error.hpp"
#include "acm/structure.hpp"

namespace acm {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw FormatError("line " + std::to_string(line) + ": " + what);
}

struct SectionInfo {
    const char* header;
    const char* keyword;
    int rank;
};

constexpr SectionInfo kSections[] = {
    {"[metric]", "g", 2},
    {"[F]", "F", 2},
    {"[T]", "T", 1},
    {"[A]", "A", 1},
};

struct Entry {
    expr::Expr value;
    std::size_t line;
};

class SpecReader {
public:
    explicit SpecReader(std::string name) : name_(std::move(name)) {}

    AlmostContactStructure read(std::string_view text) {
        std::size_t line_no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto end = text.find('\n', start);
            const auto raw = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
            ++line_no;
            handle(line_no, raw);
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        if (!dimension_) throw FormatError("missing 'dimension' header");
        if (!chart_) throw FormatError("missing 'coordinates' header");
        return build();
    }

private:
    void handle(std::size_t line, std::string_view raw) {
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
        if (content.empty()) return;
        if (content.front() == '[') {
            section_ = nullptr;
            for (const auto& s : kSections)
                if (content == s.header) section_ = &s;
            if (!section_) fail(line, "unknown section " + content);
            if (!chart_) fail(line, "section before 'dimension' and 'coordinates' headers");
            return;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) fail(line, "expected '='");
        const std::string lhs = trim(std::string_view(content).substr(0, eq));
        const std::string rhs = trim(std::string_view(content).substr(eq + 1));
        if (section_) {
            component(line, lhs, rhs);
        } else {
            header(line, lhs, rhs);
        }
    }

    void header(std::size_t line, const std::string& key, const std::string& value) {
        if (!seen_headers_.insert(key).second) fail(line, "duplicate header '" + key + "'");
        if (key == "dimension") {
            try {
                std::size_t used = 0;
                const long d = std::stol(value, &used);
                if (used != value.size() || d < 1) throw std::invalid_argument("");
                dimension_ = static_cast<std::size_t>(d);
            } catch (const std::logic_error&) {
                fail(line, "dimension must be a positive integer");
            }
        } else if (key == "coordinates") {
            if (!dimension_) fail(line, "'coordinates' must follow 'dimension'");
            auto names = words(value);
            if (names.size() != *dimension_)
                fail(line, "dimension " + std::to_string(*dimension_) + " but " + std::to_string(names.size()) +
                               " coordinates");
            try {
                chart_ = Chart::make(std::move(names));
            } catch (const ContractError& e) {
                fail(line, e.what());
            }
        } else if (key == "classes") {
            for (const auto& w : words(value)) {
                auto c = class_from_name(w);
                if (!c) fail(line, "unknown class '" + w + "'");
                claims_.insert(*c);
            }
        } else {
            fail(line, "unknown header '" + key + "'");
        }
    }

    void component(std::size_t line, const std::string& lhs, const std::string& rhs) {
        const auto parts = words(lhs);
        const std::size_t n = chart_->dimension();
        if (parts.empty() || parts[0] != section_->keyword)
            fail(line, std::string("expected '") + section_->keyword + "' component in section " + section_->header);
        if (parts.size() != static_cast<std::size_t>(section_->rank) + 1)
            fail(line, std::string(section_->keyword) + " takes " + std::to_string(section_->rank) + " indices");
        std::vector<std::size_t> idx;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(parts[i], &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != parts[i].size() || v < 1 || static_cast<std::size_t>(v) > n)
                fail(line, "index '" + parts[i] + "' out of range 1.." + std::to_string(n));
            idx.push_back(static_cast<std::size_t>(v - 1));
        }
        if (rhs.empty()) fail(line, "missing expression");
        expr::Expr value;
        try {
            value = expr::parse(rhs, chart_->coordinates);
        } catch (const Error& e) {
            fail(line, e.what());
        }
        const std::string key = section_->keyword;
        store(line, key, idx, value);
        if (key == "g" && idx[0] != idx[1]) store(line, key, {idx[1], idx[0]}, value);
    }

    void store(std::size_t line, const std::string& key, const std::vector<std::size_t>& idx, const expr::Expr& v) {
        const std::size_t n = chart_->dimension();
        std::size_t flat = 0;
        for (std::size_t i : idx) flat = flat * n + i;
        auto& table = entries_[key];
        auto [it, inserted] = table.emplace(flat, Entry{v, line});
        if (!inserted && !(it->second.value == v)) {
            std::string tag = key;
            for (std::size_t i : idx) tag += "[" + std::to_string(i + 1) + "]";
            fail(line, "conflicting component " + tag + " (first set on line " + std::to_string(it->second.line) + ")");
        }
    }

    TensorField field(const std::string& key, Valence v) const {
        TensorField zero = TensorField::zero(chart_, v);
        std::vector<expr::Expr> comps = zero.components();
        if (auto it = entries_.find(key); it != entries_.end())
            for (const auto& [flat, e] : it->second) comps[flat] = e.value;
        return TensorField(chart_, v, std::move(comps));
    }

    AlmostContactStructure build() const {
        return AlmostContactStructure(name_, field("F", kEndomorphism), field("T", kVectorField),
                                      field("A", kOneForm), field("g", kBilinearForm), claims_);
    }

    std::string name_;
    std::optional<std::size_t> dimension_;
    std::shared_ptr<const Chart> chart_;
    std::set<std::string> seen_headers_;
    std::set<StructureClass> claims_;
    const SectionInfo* section_ = nullptr;
    std::map<std::string, std::map<std::size_t, Entry>> entries_;
};

}  // namespace

AlmostContactStructure parse_spec(std::string_view text, std::string name) {
    return SpecReader(std::move(name)).read(text);
}

AlmostContactStructure load_spec(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw FormatError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str(), file.stem().string());
}

std::string save_spec(const AlmostContactStructure& s) {
    const auto& names = s.chart().coordinates;
    const std::size_t n = s.dimension();
    std::ostringstream out;
    out << "# " << s.name() << "\n";
    out << "dimension = " << n << "\n";
    out << "coordinates =";
    for (const auto& c : names) out << ' ' << c;
    out << "\n";
    if (!s.claims().empty()) {
        out << "classes =";
        for (auto c : s.claims()) out << ' ' << class_name(c);
        out << "\n";
    }
    auto emit = [&](const char* header, const char* key, const TensorField& f, bool upper_only) {
        out << "\n" << header << "\n";
        const int rank = f.valence().rank();
        for (std::size_t flat = 0; flat < f.size(); ++flat) {
            const auto& e = f.components()[flat];
            if (e.is_constant(0.0)) continue;
            const auto idx = unflatten(flat, rank, n);
            if (upper_only && idx[0] > idx[1]) continue;
            out << key;
            for (std::size_t i : idx) out << ' ' << (i + 1);
            out << " = " << e.to_string(names) << "\n";
        }
    };
    emit("[metric]", "g", s.g(), true);
    emit("[F]", "F", s.f(), false);
    emit("[T]", "T", s.t(), false);
    emit("[A]", "A", s.a(), false);
    return out.str();
}

}  // namespace acm
