// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace relaysim::runner {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void field_error(const std::string& section, const std::string& key,
                              const std::string& detail) {
    throw std::invalid_argument("config field " + section + "." + key + ": " + detail);
}

double to_double(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        field_error(section, key, "expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& section, const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        field_error(section, key, "expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& section, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    field_error(section, key, "expected a boolean, got '" + v + "'");
}

std::vector<double> to_list(const std::string& section, const std::string& key,
                            const std::string& v) {
    std::vector<double> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(to_double(section, key, item));
    }
    // whitespace-separated lists are accepted too
    if (out.size() <= 1 && v.find(',') == std::string::npos) {
        out.clear();
        std::istringstream ws(v);
        double x;
        while (ws >> x) out.push_back(x);
        if (!ws.eof()) field_error(section, key, "expected numbers, got '" + v + "'");
    }
    if (out.empty()) field_error(section, key, "empty list");
    return out;
}

std::vector<std::string> to_names(const std::string& v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile f;
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw std::invalid_argument("config line " + std::to_string(line_no) +
                                            ": empty section name");
            f.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        if (section.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": key outside any [section]");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        const auto comment = value.find('#');
        if (comment != std::string::npos) value = trim(value.substr(0, comment));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        f.sections[section][key] = value;
    }
    return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    const auto s = sections.find(section);
    if (s == sections.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
}

std::vector<double> parse_grid(const std::string& text) {
    const std::string v = trim(text);
    if (v.find(':') != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream is(v);
        if (!(is >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("bad grid '" + v + "', expected start:step:stop");
        if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
        std::vector<double> out;
        for (long k = 0;; ++k) {
            const double x = start + step * double(k);
            if (x > stop + 1e-9 * step) break;
            out.push_back(x);
        }
        return out;
    }
    std::vector<double> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void apply_config_file(const ConfigFile& f, ExperimentConfig& c) {
    auto num = [&f](const std::string& s, const std::string& k, double& target) {
        if (f.has(s, k)) target = to_double(s, k, f.get(s, k));
    };
    if (f.has("system", "M")) c.system.m = static_cast<int>(to_long("system", "M", f.get("system", "M")));
    if (f.has("system", "N")) c.system.n = static_cast<int>(to_long("system", "N", f.get("system", "N")));
    if (f.has("system", "tau_c"))
        c.system.tau_c = static_cast<int>(to_long("system", "tau_c", f.get("system", "tau_c")));
    if (f.has("system", "tau_p"))
        c.system.tau_p = static_cast<int>(to_long("system", "tau_p", f.get("system", "tau_p")));
    if (f.has("system", "seed"))
        c.system.seed = static_cast<std::uint64_t>(to_long("system", "seed", f.get("system", "seed")));

    if (f.has("fading", "beta_ar")) c.beta_ar = to_list("fading", "beta_ar", f.get("fading", "beta_ar"));
    if (f.has("fading", "beta_rb")) c.beta_rb = to_list("fading", "beta_rb", f.get("fading", "beta_rb"));

    if (f.has("powers", "p_u")) c.p_u_db = to_double("powers", "p_u", f.get("powers", "p_u"));
    if (f.has("powers", "p_r")) {
        const std::string v = f.get("powers", "p_r");
        if (v == "2Npu" || v == "2N*p_u") {
            c.couple_pr_to_2n_pu = true;
        } else {
            c.p_r_db = to_double("powers", "p_r", v);
        }
    }
    if (f.has("powers", "p_p")) {
        const std::string v = f.get("powers", "p_p");
        if (v == "pu" || v == "p_u") {
            c.couple_pp_to_pu = true;
        } else {
            c.p_p_db = to_double("powers", "p_p", v);
        }
    }

    if (f.has("scaling", "scenario")) {
        const std::string v = f.get("scaling", "scenario");
        if (v == "A") c.scaling.scenario = Scenario::A;
        else if (v == "B") c.scaling.scenario = Scenario::B;
        else if (v == "C") c.scaling.scenario = Scenario::C;
        else field_error("scaling", "scenario", "expected A, B or C, got '" + v + "'");
    }
    num("scaling", "alpha", c.scaling.alpha);
    num("scaling", "beta", c.scaling.beta);
    num("scaling", "gamma", c.scaling.gamma);
    num("scaling", "E_u", c.e_u_db);
    num("scaling", "E_r", c.e_r_db);
    num("scaling", "E_p", c.e_p_db);

    num("allocate", "P", c.budget_db);
    if (f.has("allocate", "mode")) c.allocate_mode = f.get("allocate", "mode");
    num("allocate", "theta", c.alloc.theta);
    num("allocate", "eps", c.alloc.eps);

    if (f.has("sweep", "variable")) c.sweep.variable = f.get("sweep", "variable");
    if (f.has("sweep", "grid")) {
        try {
            c.sweep.grid = parse_grid(f.get("sweep", "grid"));
        } catch (const std::exception& e) {
            field_error("sweep", "grid", e.what());
        }
    }

    if (f.has("run", "kind")) c.kind = f.get("run", "kind");
    if (f.has("run", "trials")) c.trials = to_long("run", "trials", f.get("run", "trials"));
    if (f.has("run", "protocol")) c.protocol = f.get("run", "protocol");
    if (f.has("run", "mc_mode")) c.mc_mode = f.get("run", "mc_mode");
    if (f.has("run", "outputs")) c.outputs = to_names(f.get("run", "outputs"));
    if (f.has("run", "out")) c.out_path = f.get("run", "out");
    if (f.has("run", "pilot_follows_pu"))
        c.couple_pp_to_pu = to_bool("run", "pilot_follows_pu", f.get("run", "pilot_follows_pu"));
}

}  // namespace relaysim::runner
