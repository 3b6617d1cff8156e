#include "semsans/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace semsans {

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

struct Line {
    int number;
    std::string text;
};

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

enum class Dim { Length, Field, Angle };

double unit_factor(Dim dim, const std::string& unit, int line) {
    static const std::map<std::string, double> length{
        {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};
    static const std::map<std::string, double> field{{"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}};
    static const std::map<std::string, double> angle{
        {"rad", 1.0}, {"mrad", 1e-3}, {"deg", M_PI / 180.0}};
    const std::map<std::string, double>* table = nullptr;
    const char* name = "";
    switch (dim) {
        case Dim::Length: table = &length; name = "length"; break;
        case Dim::Field: table = &field; name = "field"; break;
        case Dim::Angle: table = &angle; name = "angle"; break;
    }
    auto it = table->find(unit);
    if (it == table->end())
        parse_fail(line, "unknown " + std::string(name) + " unit '" + unit + "'");
    return it->second;
}

/// "103.8 mT" -> SI value; a missing unit is a parse error.
double parse_quantity(const std::string& value, Dim dim, int line) {
    std::istringstream in(value);
    double x;
    std::string unit, extra;
    if (!(in >> x))
        parse_fail(line, "expected a number in '" + value + "'");
    if (!(in >> unit))
        parse_fail(line, "missing unit suffix in '" + value + "'");
    if (in >> extra)
        parse_fail(line, "trailing content after unit in '" + value + "'");
    return x * unit_factor(dim, unit, line);
}

struct KeyValue {
    std::string key, value;
    int line;
};

struct Section {
    std::string name;
    int line;
    std::vector<KeyValue> entries;

    const KeyValue* find(const std::string& key) const {
        for (const auto& kv : entries)
            if (kv.key == key) return &kv;
        return nullptr;
    }

    double quantity(const std::string& key, Dim dim, double fallback, bool* found = nullptr) const {
        const KeyValue* kv = find(key);
        if (found) *found = kv != nullptr;
        if (!kv) return fallback;
        return parse_quantity(kv->value, dim, kv->line);
    }

    double required(const std::string& key, Dim dim) const {
        const KeyValue* kv = find(key);
        if (!kv)
            parse_fail(line, "section [" + name + "] is missing key '" + key + "'");
        return parse_quantity(kv->value, dim, kv->line);
    }

    std::string word(const std::string& key, const std::string& fallback) const {
        const KeyValue* kv = find(key);
        return kv ? kv->value : fallback;
    }
};

std::vector<Section> split_sections(const std::string& text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                parse_fail(number, "malformed section header");
            sections.push_back({trim(line.substr(1, line.size() - 2)), number, {}});
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            parse_fail(number, "expected 'key = value'");
        if (sections.empty())
            parse_fail(number, "key outside any section");
        sections.back().entries.push_back(
            {trim(line.substr(0, eq)), trim(line.substr(eq + 1)), number});
    }
    return sections;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.config_hash = fnv1a64(text);

    const std::vector<Section> sections = split_sections(text);
    const Section* beam = nullptr;
    const Section* detector = nullptr;
    const Section* checker = nullptr;
    const Section* constants = nullptr;
    std::vector<const Section*> pairs;
    for (const auto& s : sections) {
        if (s.name == "beam") beam = &s;
        else if (s.name == "pair") pairs.push_back(&s);
        else if (s.name == "detector") detector = &s;
        else if (s.name == "checkerboard") checker = &s;
        else if (s.name == "constants") constants = &s;
        else parse_fail(s.line, "unknown section [" + s.name + "]");
    }
    if (!beam)
        throw Error(ErrorCode::ParseError, "config has no [beam] section");

    Constants c = Constants::codata2018();
    if (constants) {
        const std::string set = constants->word("set", "codata2018");
        if (set == "codata2018") c = Constants::codata2018();
        else if (set == "rounded") c = Constants::rounded_moment();
        else parse_fail(constants->line, "unknown constants set '" + set + "'");
    }
    cfg.beamline.constants = c;

    const double lambda = beam->required("wavelength", Dim::Length);
    cfg.state = NeutronState::from_wavelength(lambda, c);
    cfg.state.theta_in = beam->quantity("theta_in", Dim::Angle, M_PI / 2.0);
    cfg.state.phi_in = beam->quantity("phi_in", Dim::Angle, 0.0);
    cfg.state.x0 = beam->quantity("x0", Dim::Length, 0.0);
    cfg.state.y0 = beam->quantity("y0", Dim::Length, 0.0);
    cfg.state.divergence = beam->quantity("divergence", Dim::Angle, 0.0);
    cfg.state.validate();

    double detector_z = 0.0;
    bool have_detector = false;
    if (detector) {
        detector_z = detector->required("z", Dim::Length);
        const std::string orient = detector->word("orientation", "vertical");
        if (orient == "vertical")
            cfg.beamline.detector_orientation = DetectorOrientation::Vertical;
        else if (orient == "focusing-plane")
            cfg.beamline.detector_orientation = DetectorOrientation::FocusingPlane;
        else
            parse_fail(detector->line, "unknown detector orientation '" + orient + "'");
        have_detector = true;
    }

    double z_cursor = 0.0;
    for (const Section* ps : pairs) {
        PrismPairSpec p;
        p.a = ps->required("a", Dim::Length);
        p.gap = ps->required("gap", Dim::Length);
        p.B1 = ps->required("B1", Dim::Field);
        p.B2 = ps->required("B2", Dim::Field);
        const std::string geom = ps->word("geometry", "parallelogram");
        if (geom == "parallelogram") p.geometry = Geometry::Parallelogram;
        else if (geom == "triangular") p.geometry = Geometry::Triangular;
        else parse_fail(ps->line, "unknown geometry '" + geom + "'");
        const std::string axis = ps->word("axis", "x");
        if (axis == "x") p.field_axis = {1.0, 0.0, 0.0};
        else if (axis == "y") p.field_axis = {0.0, 1.0, 0.0};
        else parse_fail(ps->line, "field axis must be 'x' or 'y'");
        bool have_offset = false;
        const double offset = ps->quantity("offset", Dim::Length, z_cursor, &have_offset);
        p.z_center1 = offset;
        z_cursor = p.z_center1 + p.prism_spacing() + p.a + p.gap;  // next pair default
        if (have_detector) {
            p.L1 = detector_z - p.z_center1;
            p.L2 = p.L1 - p.prism_spacing();
        }
        p.validate();
        cfg.beamline.pairs.push_back(p);
    }
    cfg.has_pairs = !pairs.empty();
    cfg.beamline.detector_z = detector_z;
    if (cfg.has_pairs) cfg.beamline.validate();

    if (checker) {
        CheckerboardSetup cb;
        cb.L1 = checker->required("L1", Dim::Length);
        cb.L2 = checker->required("L2", Dim::Length);
        cb.L3 = checker->required("L3", Dim::Length);
        cb.L4 = checker->required("L4", Dim::Length);
        cb.a = checker->quantity("a", Dim::Length, 0.1);
        bool have_cap = false;
        cb.field_cap = checker->quantity("field_cap", Dim::Field, 0.0, &have_cap);
        bool have_b1 = false;
        cb.B1 = checker->quantity("B1", Dim::Field, 0.0, &have_b1);
        if (have_cap == have_b1)
            parse_fail(checker->line,
                       "[checkerboard] needs exactly one of 'field_cap' or 'B1'");
        cb.capped = have_cap;
        if (!(cb.L1 > cb.L2 && cb.L2 > cb.L3 && cb.L3 > cb.L4 && cb.L4 > 0.0))
            throw Error(ErrorCode::ValidationError,
                        "checkerboard distances must satisfy L1>L2>L3>L4>0");
        if (cb.L1 - cb.L2 <= cb.a || cb.L3 - cb.L4 <= cb.a)
            throw Error(ErrorCode::ValidationError,
                        "prism edge length too large for the pair spacings");
        cfg.checkerboard = cb;
    }

    if (!cfg.has_pairs && !cfg.checkerboard)
        throw Error(ErrorCode::ParseError, "config defines neither [pair] nor [checkerboard]");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace semsans
