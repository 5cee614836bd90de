// Copyright 2026 The nit-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nitsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <variant>

#include "nitsim/format.hpp"

namespace nitsim::config {

namespace {

using Kind = ConfigError::Kind;

struct Value {
    enum class Type { number, string, boolean, number_array, string_array } type;
    double number = 0.0;
    std::string text;
    bool boolean = false;
    std::vector<double> numbers;
    std::vector<std::string> strings;
    int line = 0;
    std::string raw;
};

using Block = std::map<std::string, Value>;

const std::map<std::string, std::vector<std::string>>& schema() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"run", {"command", "output_dir", "formats"}},
        {"system",
         {"units", "delta_p", "delta_b_offset", "delta_q_offset", "lambda", "g", "epsilon", "kappa_a", "kappa_b",
          "gamma", "gamma_phi"}},
        {"physical", {"units", "d", "V0", "C0", "M", "m", "omega", "nu", "k_l", "Omega", "q_e", "k_c", "hbar"}},
        {"sweep", {"delta_min", "delta_max", "n_points", "backend", "n_a", "n_b", "meanfield_tol"}},
        {"evolve", {"backend", "t_end", "tol", "n_a", "n_b", "export_liouvillian"}},
        {"dephasing_scan", {"gamma_phi_values"}},
    };
    return keys;
}

std::string suggestion(std::string_view word, const std::vector<std::string>& candidates) {
    std::string best;
    std::size_t best_distance = 3;
    for (const auto& c : candidates) {
        const std::size_t d = edit_distance(word, c);
        if (d < best_distance) {
            best_distance = d;
            best = c;
        }
    }
    return best.empty() ? std::string{} : " (did you mean '" + best + "'?)";
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string where(int line) { return "line " + std::to_string(line) + ": "; }

std::optional<double> parse_number(std::string_view token) {
    token = trim(token);
    if (token.empty()) {
        return std::nullopt;
    }
    if (token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::string> parse_string(std::string_view token) {
    token = trim(token);
    if (token.size() < 2 || token.front() != '"' || token.back() != '"') {
        return std::nullopt;
    }
    const std::string_view inner = token.substr(1, token.size() - 2);
    if (inner.find('"') != std::string_view::npos) {
        return std::nullopt;
    }
    return std::string(inner);
}

std::vector<std::string_view> split_items(std::string_view inner) {
    std::vector<std::string_view> items;
    if (trim(inner).empty()) {
        return items;
    }
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i <= inner.size(); ++i) {
        if (i < inner.size() && inner[i] == '"') {
            quoted = !quoted;
        }
        if (i == inner.size() || (inner[i] == ',' && !quoted)) {
            items.push_back(trim(inner.substr(start, i - start)));
            start = i + 1;
        }
    }
    return items;
}

Value parse_value(std::string_view key, std::string_view token, int line) {
    Value v;
    v.line = line;
    v.raw = std::string(token);
    if (token.empty()) {
        throw ConfigError(Kind::syntax, std::string(key), line, where(line) + "missing value for '" + std::string(key) + "'");
    }
    if (token.front() == '[') {
        if (token.back() != ']') {
            throw ConfigError(Kind::syntax, std::string(key), line, where(line) + "unterminated array for '" + std::string(key) + "'");
        }
        const auto items = split_items(token.substr(1, token.size() - 2));
        const bool strings = !items.empty() && !items.front().empty() && items.front().front() == '"';
        if (strings) {
            v.type = Value::Type::string_array;
            for (const auto item : items) {
                auto s = parse_string(item);
                if (!s) {
                    throw ConfigError(Kind::wrong_type, std::string(key), line,
                                      where(line) + "'" + std::string(key) + "' mixes strings with other values");
                }
                v.strings.push_back(*s);
            }
        } else {
            v.type = Value::Type::number_array;
            for (const auto item : items) {
                auto x = parse_number(item);
                if (!x) {
                    throw ConfigError(Kind::not_numeric, std::string(key), line,
                                      where(line) + "'" + std::string(item) + "' in '" + std::string(key) +
                                          "' is not a number");
                }
                v.numbers.push_back(*x);
            }
        }
        return v;
    }
    if (token.front() == '"') {
        auto s = parse_string(token);
        if (!s) {
            throw ConfigError(Kind::syntax, std::string(key), line, where(line) + "malformed string for '" + std::string(key) + "'");
        }
        v.type = Value::Type::string;
        v.text = *s;
        return v;
    }
    if (token == "true" || token == "false") {
        v.type = Value::Type::boolean;
        v.boolean = token == "true";
        return v;
    }
    auto x = parse_number(token);
    if (!x) {
        throw ConfigError(Kind::not_numeric, std::string(key), line,
                          where(line) + "value '" + std::string(token) + "' for '" + std::string(key) +
                              "' is not a number");
    }
    v.type = Value::Type::number;
    v.number = *x;
    return v;
}

std::string strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return std::string(line.substr(0, i));
        }
    }
    return std::string(line);
}

struct Document {
    std::map<std::string, Block> blocks;
    std::map<std::string, int> block_lines;
};

Document tokenize(std::string_view text) {
    Document doc;
    const auto& keys = schema();
    std::vector<std::string> block_names;
    for (const auto& [name, _] : keys) {
        block_names.push_back(name);
    }
    Block* current = nullptr;
    std::string current_name;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;
        const std::string stripped = strip_comment(raw);
        const std::string_view line = trim(stripped);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(Kind::syntax, std::string(line), line_no, where(line_no) + "malformed block header");
            }
            current_name = std::string(trim(line.substr(1, line.size() - 2)));
            if (!keys.count(current_name)) {
                throw ConfigError(Kind::unknown_block, current_name, line_no,
                                  where(line_no) + "unknown block [" + current_name + "]" +
                                      suggestion(current_name, block_names));
            }
            if (doc.blocks.count(current_name)) {
                throw ConfigError(Kind::duplicate_key, current_name, line_no,
                                  where(line_no) + "block [" + current_name + "] appears twice");
            }
            current = &doc.blocks[current_name];
            doc.block_lines[current_name] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(Kind::syntax, std::string(line), line_no, where(line_no) + "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (current == nullptr) {
            throw ConfigError(Kind::syntax, key, line_no, where(line_no) + "key '" + key + "' appears before any [block]");
        }
        const auto& allowed = keys.at(current_name);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(Kind::unknown_key, key, line_no,
                              where(line_no) + "unknown key '" + key + "' in [" + current_name + "]" +
                                  suggestion(key, allowed));
        }
        if (current->count(key)) {
            throw ConfigError(Kind::duplicate_key, key, line_no, where(line_no) + "duplicate key '" + key + "'");
        }
        current->emplace(key, parse_value(key, trim(line.substr(eq + 1)), line_no));
    }
    return doc;
}

/// Typed accessors over one block; each error names the key and its line.
class Reader {
public:
    Reader(const Block& block, std::string name) : block_(block), name_(std::move(name)) {}

    bool has(const std::string& key) const { return block_.count(key) > 0; }
    int line(const std::string& key) const { return has(key) ? block_.at(key).line : 0; }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const Value& v = block_.at(key);
        if (v.type != Value::Type::number) {
            throw ConfigError(Kind::not_numeric, key, v.line, where(v.line) + "'" + key + "' must be a number");
        }
        return v.number;
    }

    int integer(const std::string& key, int fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const double x = number(key, 0.0);
        if (x != std::floor(x) || std::abs(x) > 1e9) {
            throw ConfigError(Kind::out_of_range, key, line(key), where(line(key)) + "'" + key + "' must be an integer");
        }
        return static_cast<int>(x);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const Value& v = block_.at(key);
        if (v.type != Value::Type::string) {
            throw ConfigError(Kind::wrong_type, key, v.line, where(v.line) + "'" + key + "' must be a quoted string");
        }
        return v.text;
    }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const Value& v = block_.at(key);
        if (v.type != Value::Type::boolean) {
            throw ConfigError(Kind::wrong_type, key, v.line, where(v.line) + "'" + key + "' must be true or false");
        }
        return v.boolean;
    }

    std::vector<double> numbers(const std::string& key) const {
        const Value& v = block_.at(key);
        if (v.type == Value::Type::number) {
            return {v.number};
        }
        if (v.type != Value::Type::number_array) {
            throw ConfigError(Kind::not_numeric, key, v.line, where(v.line) + "'" + key + "' must be an array of numbers");
        }
        return v.numbers;
    }

    std::vector<std::string> strings(const std::string& key) const {
        const Value& v = block_.at(key);
        if (v.type == Value::Type::string) {
            return {v.text};
        }
        if (v.type != Value::Type::string_array) {
            throw ConfigError(Kind::wrong_type, key, v.line, where(v.line) + "'" + key + "' must be an array of strings");
        }
        return v.strings;
    }

    [[noreturn]] void out_of_range(const std::string& key, const std::string& why) const {
        const int l = line(key);
        throw ConfigError(Kind::out_of_range, key, l, (l > 0 ? where(l) : std::string{}) + "'" + key + "' in [" + name_ + "] " + why);
    }

private:
    const Block& block_;
    std::string name_;
};

Units read_units(const Reader& r, const std::string& block, Units fallback) {
    const std::string fallback_name = fallback == Units::si ? "SI" : "kappa_a";
    const std::string u = r.text("units", fallback_name);
    if (u == "kappa_a") {
        if (block == "physical") {
            r.out_of_range("units", "must be \"SI\"");
        }
        return Units::kappa_a;
    }
    if (u == "SI") {
        return Units::si;
    }
    r.out_of_range("units", "must be \"kappa_a\" or \"SI\"");
}

spectra::Backend read_backend(const Reader& r, spectra::Backend fallback) {
    if (!r.has("backend")) {
        return fallback;
    }
    const std::string name = r.text("backend", "");
    try {
        return spectra::backend_from_string(name);
    } catch (const DomainError&) {
        r.out_of_range("backend", "must be \"analytic\", \"meanfield\" or \"quantum\" (got \"" + name + "\")");
    }
}

void check_truncation(const Reader& r, int n_a, int n_b) {
    if (n_a < 2) {
        r.out_of_range("n_a", "must be >= 2");
    }
    if (n_b < 2) {
        r.out_of_range("n_b", "must be >= 2");
    }
    quantum::HilbertSpec spec{n_a, n_b};
    try {
        spec.validate();
    } catch (const DimensionError& e) {
        r.out_of_range("n_a", e.what());
    }
}

SystemParams read_system(const Reader& r, Units units, std::vector<std::string>& assumptions) {
    SystemParams s;
    if (units == Units::si && !r.has("kappa_a")) {
        throw ConfigError(Kind::missing_key, "kappa_a", 0, "[system] with units = \"SI\" requires 'kappa_a'");
    }
    s.kappa_a = r.number("kappa_a", 1.0);
    s.delta_p = r.number("delta_p", 0.0);
    s.delta_b_offset = r.number("delta_b_offset", 0.0);
    s.delta_q_offset = r.number("delta_q_offset", 0.0);
    s.lambda = r.number("lambda", 0.0);
    s.g = r.number("g", 0.0);
    if (r.has("epsilon")) {
        const auto eps = r.numbers("epsilon");
        if (eps.size() == 1) {
            s.epsilon = {eps[0], 0.0};
        } else if (eps.size() == 2) {
            s.epsilon = {eps[0], eps[1]};
        } else {
            r.out_of_range("epsilon", "must be a number or [re, im]");
        }
    }
    if (r.has("kappa_b")) {
        s.kappa_b = r.number("kappa_b", 0.0);
    } else {
        s.kappa_b = 1e-3 * s.kappa_a;
        assumptions.emplace_back("kappa_b not given; defaulted to 1e-3 kappa_a");
    }
    s.gamma = r.number("gamma", 0.0);
    s.gamma_phi = r.number("gamma_phi", 0.0);
    try {
        s.validate();
    } catch (const DomainError& e) {
        r.out_of_range(e.field(), std::string("is out of range: ") + e.what());
    }
    return s;
}

PhysicalParams read_physical(const Reader& r) {
    PhysicalParams p;
    const PhysicalParams defaults;
    for (const char* key : {"d", "V0", "C0", "M", "m", "omega", "nu", "k_l", "Omega"}) {
        if (!r.has(key)) {
            throw ConfigError(Kind::missing_key, key, 0, std::string("[physical] requires '") + key + "'");
        }
    }
    p.d = r.number("d", 0.0);
    p.V0 = r.number("V0", 0.0);
    p.C0 = r.number("C0", 0.0);
    p.M = r.number("M", 0.0);
    p.m = r.number("m", 0.0);
    p.omega = r.number("omega", 0.0);
    p.nu = r.number("nu", 0.0);
    p.k_l = r.number("k_l", 0.0);
    p.Omega = r.number("Omega", 0.0);
    p.q_e = r.number("q_e", defaults.q_e);
    p.k_c = r.number("k_c", defaults.k_c);
    p.hbar = r.number("hbar", defaults.hbar);
    try {
        p.validate();
    } catch (const DomainError& e) {
        r.out_of_range(e.field(), std::string("is out of range: ") + e.what());
    }
    return p;
}

void write_number(std::ostringstream& out, const char* key, double value) {
    out << key << " = " << format_shortest(value) << '\n';
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::steady: return "steady";
        case Command::sweep: return "sweep";
        case Command::evolve: return "evolve";
        case Command::validate: return "validate";
        case Command::derive_coupling: return "derive-coupling";
        case Command::dephasing_scan: return "dephasing-scan";
    }
    return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
    for (const Command c : {Command::steady, Command::sweep, Command::evolve, Command::validate,
                            Command::derive_coupling, Command::dephasing_scan}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

spectra::SweepConfig RunConfig::sweep_config() const {
    const SweepBlock block = sweep.value_or(SweepBlock{});
    spectra::SweepConfig cfg;
    cfg.base = resolved_system();
    cfg.delta_min = block.delta_min;
    cfg.delta_max = block.delta_max;
    cfg.n_points = block.n_points;
    cfg.backend = block.backend;
    cfg.quantum_spec = quantum::HilbertSpec{block.n_a, block.n_b};
    cfg.meanfield_tol = block.meanfield_tol;
    return cfg;
}

bool RunConfig::wants(std::string_view format) const {
    return std::find(formats.begin(), formats.end(), format) != formats.end();
}

bool RunConfig::operator==(const RunConfig& o) const {
    return command == o.command && system == o.system && system_units == o.system_units &&
           physical == o.physical && sweep == o.sweep && evolve == o.evolve &&
           dephasing_scan == o.dephasing_scan && output_dir == o.output_dir && formats == o.formats;
}

RunConfig parse_config(std::string_view text, std::optional<Command> command_override) {
    const Document doc = tokenize(text);
    static const Block empty;
    auto block = [&](const std::string& name) -> const Block& {
        const auto it = doc.blocks.find(name);
        return it == doc.blocks.end() ? empty : it->second;
    };
    RunConfig cfg;

    const Reader run(block("run"), "run");
    if (command_override) {
        cfg.command = *command_override;
    } else if (run.has("command")) {
        const std::string name = run.text("command", "");
        const auto c = command_from_string(name);
        if (!c) {
            run.out_of_range("command", "is not a known command (\"" + name + "\")");
        }
        cfg.command = *c;
    } else {
        throw ConfigError(Kind::missing_key, "command", 0, "no command given on the command line or in [run]");
    }
    cfg.output_dir = run.text("output_dir", cfg.output_dir);
    if (run.has("formats")) {
        cfg.formats = run.strings("formats");
        for (const auto& f : cfg.formats) {
            if (f != "csv" && f != "json" && f != "svg") {
                run.out_of_range("formats", "entries must be \"csv\", \"json\" or \"svg\" (got \"" + f + "\")");
            }
        }
    }

    if (!doc.blocks.count("system")) {
        throw ConfigError(Kind::missing_block, "system", 0, "missing required block [system]");
    }
    const Reader sys(block("system"), "system");
    cfg.system_units = read_units(sys, "system", Units::kappa_a);
    cfg.system = read_system(sys, cfg.system_units, cfg.assumptions);

    if (doc.blocks.count("physical")) {
        const Reader phys(block("physical"), "physical");
        read_units(phys, "physical", Units::si);
        cfg.physical = read_physical(phys);
    }

    if (doc.blocks.count("sweep")) {
        const Reader r(block("sweep"), "sweep");
        SweepBlock s;
        s.delta_min = r.number("delta_min", s.delta_min);
        s.delta_max = r.number("delta_max", s.delta_max);
        s.n_points = r.integer("n_points", s.n_points);
        s.backend = read_backend(r, s.backend);
        s.n_a = r.integer("n_a", s.n_a);
        s.n_b = r.integer("n_b", s.n_b);
        s.meanfield_tol = r.number("meanfield_tol", s.meanfield_tol);
        if (!(s.delta_min < s.delta_max)) {
            r.out_of_range("delta_max", "must exceed delta_min");
        }
        if (s.n_points < 2) {
            r.out_of_range("n_points", "must be >= 2");
        }
        if (!(s.meanfield_tol > 0.0)) {
            r.out_of_range("meanfield_tol", "must be > 0");
        }
        check_truncation(r, s.n_a, s.n_b);
        cfg.sweep = s;
    }

    if (doc.blocks.count("evolve")) {
        const Reader r(block("evolve"), "evolve");
        EvolveBlock e;
        e.backend = read_backend(r, e.backend);
        e.t_end = r.number("t_end", e.t_end);
        e.tol = r.number("tol", e.tol);
        e.n_a = r.integer("n_a", e.n_a);
        e.n_b = r.integer("n_b", e.n_b);
        e.export_liouvillian = r.boolean("export_liouvillian", e.export_liouvillian);
        if (e.backend == spectra::Backend::analytic) {
            r.out_of_range("backend", "must be \"meanfield\" or \"quantum\" for time evolution");
        }
        if (!(e.t_end > 0.0)) {
            r.out_of_range("t_end", "must be > 0");
        }
        if (!(e.tol > 0.0 && e.tol <= 1e-2)) {
            r.out_of_range("tol", "must lie in (0, 1e-2]");
        }
        check_truncation(r, e.n_a, e.n_b);
        cfg.evolve = e;
    }

    if (doc.blocks.count("dephasing_scan")) {
        const Reader r(block("dephasing_scan"), "dephasing_scan");
        if (!r.has("gamma_phi_values")) {
            throw ConfigError(Kind::missing_key, "gamma_phi_values", doc.block_lines.at("dephasing_scan"),
                              "[dephasing_scan] requires 'gamma_phi_values'");
        }
        DephasingScanBlock d{r.numbers("gamma_phi_values")};
        if (d.gamma_phi_values.empty()) {
            r.out_of_range("gamma_phi_values", "must not be empty");
        }
        for (const double v : d.gamma_phi_values) {
            if (v < 0.0) {
                r.out_of_range("gamma_phi_values", "entries must be >= 0");
            }
        }
        cfg.dephasing_scan = d;
    }

    auto require = [&](bool present, const char* name) {
        if (!present) {
            throw ConfigError(Kind::missing_block, name, 0,
                              std::string("command '") + std::string(to_string(cfg.command)) + "' requires block [" +
                                  name + "]");
        }
    };
    switch (cfg.command) {
        case Command::sweep: require(cfg.sweep.has_value(), "sweep"); break;
        case Command::evolve: require(cfg.evolve.has_value(), "evolve"); break;
        case Command::derive_coupling: require(cfg.physical.has_value(), "physical"); break;
        case Command::dephasing_scan: require(cfg.dephasing_scan.has_value(), "dephasing_scan"); break;
        case Command::steady:
        case Command::validate: break;
    }
    return cfg;
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[run]\n";
    out << "command = \"" << to_string(cfg.command) << "\"\n";
    out << "output_dir = \"" << cfg.output_dir << "\"\n";
    out << "formats = [";
    for (std::size_t i = 0; i < cfg.formats.size(); ++i) {
        out << (i ? ", " : "") << '"' << cfg.formats[i] << '"';
    }
    out << "]\n\n[system]\n";
    out << "units = \"" << (cfg.system_units == Units::si ? "SI" : "kappa_a") << "\"\n";
    const SystemParams& s = cfg.system;
    write_number(out, "delta_p", s.delta_p);
    write_number(out, "delta_b_offset", s.delta_b_offset);
    write_number(out, "delta_q_offset", s.delta_q_offset);
    write_number(out, "lambda", s.lambda);
    write_number(out, "g", s.g);
    if (s.epsilon.imag() == 0.0) {
        write_number(out, "epsilon", s.epsilon.real());
    } else {
        out << "epsilon = [" << format_shortest(s.epsilon.real()) << ", " << format_shortest(s.epsilon.imag()) << "]\n";
    }
    write_number(out, "kappa_a", s.kappa_a);
    write_number(out, "kappa_b", s.kappa_b);
    write_number(out, "gamma", s.gamma);
    write_number(out, "gamma_phi", s.gamma_phi);
    if (cfg.physical) {
        const PhysicalParams& p = *cfg.physical;
        out << "\n[physical]\nunits = \"SI\"\n";
        write_number(out, "d", p.d);
        write_number(out, "V0", p.V0);
        write_number(out, "C0", p.C0);
        write_number(out, "M", p.M);
        write_number(out, "m", p.m);
        write_number(out, "omega", p.omega);
        write_number(out, "nu", p.nu);
        write_number(out, "k_l", p.k_l);
        write_number(out, "Omega", p.Omega);
        write_number(out, "q_e", p.q_e);
        write_number(out, "k_c", p.k_c);
        write_number(out, "hbar", p.hbar);
    }
    if (cfg.sweep) {
        const SweepBlock& w = *cfg.sweep;
        out << "\n[sweep]\n";
        write_number(out, "delta_min", w.delta_min);
        write_number(out, "delta_max", w.delta_max);
        out << "n_points = " << w.n_points << '\n';
        out << "backend = \"" << spectra::to_string(w.backend) << "\"\n";
        out << "n_a = " << w.n_a << "\nn_b = " << w.n_b << '\n';
        write_number(out, "meanfield_tol", w.meanfield_tol);
    }
    if (cfg.evolve) {
        const EvolveBlock& e = *cfg.evolve;
        out << "\n[evolve]\n";
        out << "backend = \"" << spectra::to_string(e.backend) << "\"\n";
        write_number(out, "t_end", e.t_end);
        write_number(out, "tol", e.tol);
        out << "n_a = " << e.n_a << "\nn_b = " << e.n_b << '\n';
        out << "export_liouvillian = " << (e.export_liouvillian ? "true" : "false") << '\n';
    }
    if (cfg.dephasing_scan) {
        out << "\n[dephasing_scan]\ngamma_phi_values = [";
        const auto& v = cfg.dephasing_scan->gamma_phi_values;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out << (i ? ", " : "") << format_shortest(v[i]);
        }
        out << "]\n";
    }
    return out.str();
}

}  // namespace nitsim::config
