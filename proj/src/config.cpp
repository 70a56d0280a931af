// SPDX-License-Identifier: Apache-2.0
#include "stdg/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "stdg/common.hpp"

namespace stdg {

namespace {

struct KeyValue {
  std::string value;
  int line;
  bool used = false;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

class KvReader {
 public:
  KvReader(const std::string& text, std::string origin) : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string t = trim(line);
      if (t.empty()) continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        fail(lineno, "expected 'key = value'");
      }
      const std::string key = trim(t.substr(0, eq));
      const std::string value = trim(t.substr(eq + 1));
      if (key.empty() || value.empty()) fail(lineno, "expected 'key = value'");
      if (entries_.count(key)) fail(lineno, "duplicate key '" + key + "'");
      entries_[key] = {value, lineno};
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw InputError(origin_ + ":" + std::to_string(line) + ": " + msg);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string raw(const std::string& key, const std::string& fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  double number(const std::string& key, double fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second.value, &pos);
      if (pos != it->second.value.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      fail(it->second.line, "cannot parse number for '" + key + "': " + it->second.value);
    }
  }

  int integer(const std::string& key, int fallback) {
    const double v = number(key, fallback);
    const int iv = static_cast<int>(v);
    if (static_cast<double>(iv) != v) {
      fail(entries_.at(key).line, "expected integer for '" + key + "'");
    }
    return iv;
  }

  bool boolean(const std::string& key, bool fallback) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    it->second.used = true;
    if (it->second.value == "true" || it->second.value == "1") return true;
    if (it->second.value == "false" || it->second.value == "0") return false;
    fail(it->second.line, "expected boolean for '" + key + "'");
  }

  void check_all_used() const {
    for (const auto& [key, kv] : entries_) {
      if (!kv.used) fail(kv.line, "unknown key '" + key + "'");
    }
  }

 private:
  std::string origin_;
  std::map<std::string, KeyValue> entries_;
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  KvReader kv(text, origin);
  RunConfig cfg;
  cfg.domain.x0 = kv.number("domain.x0", cfg.domain.x0);
  cfg.domain.y0 = kv.number("domain.y0", cfg.domain.y0);
  cfg.domain.x1 = kv.number("domain.x1", cfg.domain.x1);
  cfg.domain.y1 = kv.number("domain.y1", cfg.domain.y1);
  cfg.nx = kv.integer("mesh.nx", cfg.nx);
  cfg.ny = kv.integer("mesh.ny", cfg.ny);
  cfg.degree = kv.integer("space.degree", cfg.degree);
  cfg.final_time = kv.number("time.final", cfg.final_time);
  cfg.slabs = kv.integer("time.slabs", cfg.slabs);
  cfg.time_degree = kv.integer("time.degree", cfg.time_degree);

  const std::string nu = kv.raw("weight.nu", "auto");
  if (nu == "auto") {
    cfg.nu_auto = true;
  } else {
    cfg.nu_auto = false;
    cfg.nu = kv.number("weight.nu", 0.0);
  }
  const std::string gv = kv.raw("penalty.gamma_v", "auto");
  const std::string gp = kv.raw("penalty.gamma_p", "auto");
  if (gv == "auto" && gp == "auto") {
    cfg.penalty_auto = true;
  } else {
    cfg.penalty_auto = false;
    const PenaltyParams def = PenaltyParams::default_for_degree(cfg.degree);
    cfg.gamma_v = gv == "auto" ? def.gamma_v : kv.number("penalty.gamma_v", 0.0);
    cfg.gamma_p = gp == "auto" ? def.gamma_p : kv.number("penalty.gamma_p", 0.0);
  }

  cfg.material.rho = kv.number("material.rho", cfg.material.rho);
  cfg.material.alpha = kv.number("material.alpha", cfg.material.alpha);
  cfg.material.c0 = kv.number("material.c0", cfg.material.c0);
  cfg.material.lambda = kv.number("material.lambda", cfg.material.lambda);
  cfg.material.mu = kv.number("material.mu", cfg.material.mu);
  cfg.material.K(0, 0) = kv.number("material.k11", cfg.material.K(0, 0));
  cfg.material.K(1, 1) = kv.number("material.k22", cfg.material.K(1, 1));
  const double k12 = kv.number("material.k12", cfg.material.K(0, 1));
  cfg.material.K(0, 1) = k12;
  cfg.material.K(1, 0) = k12;

  cfg.case_id = kv.raw("case", cfg.case_id);
  cfg.output_dir = kv.raw("output.dir", cfg.output_dir);
  cfg.dump_fields = kv.boolean("output.dump_fields", cfg.dump_fields);
  kv.check_all_used();
  cfg.validate();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

double RunConfig::resolve_nu() const {
  return nu_auto ? compute_nu0(material, 0.1) + 0.1 : nu;
}

PenaltyParams RunConfig::resolve_penalty() const {
  return penalty_auto ? PenaltyParams::default_for_degree(degree)
                      : PenaltyParams{gamma_v, gamma_p};
}

StudyConfig RunConfig::study_config() const {
  StudyConfig sc;
  sc.domain = domain;
  sc.nx = nx;
  sc.ny = ny;
  sc.degree = degree;
  sc.final_time = final_time;
  sc.slabs = slabs;
  sc.time_degree = time_degree;
  sc.nu = resolve_nu();
  sc.penalty = resolve_penalty();
  return sc;
}

void RunConfig::validate() const {
  material.validate();
  if (nx < 1 || ny < 1) throw InputError("config: mesh.nx and mesh.ny must be >= 1");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) {
    throw InputError("config: domain must have positive extent");
  }
  if (degree < 0) throw InputError("config: space.degree must be >= 0");
  if (time_degree < 0) throw InputError("config: time.degree must be >= 0");
  if (slabs < 1) throw InputError("config: time.slabs must be >= 1");
  if (!(final_time > 0.0)) throw InputError("config: time.final must be positive");
  if (!penalty_auto && (!(gamma_v > 0.0) || !(gamma_p > 0.0))) {
    throw InputError("config: penalties must be positive");
  }
  if (!nu_auto) {
    const double nu0 = compute_nu0(material, 0.1);
    if (nu < nu0) {
      throw InputError(
          "config: weight.nu = " + std::to_string(nu) + " is below the uniform positivity bound " +
          std::to_string(nu0) +
          " (nu*M0 + M1 must dominate gamma = 0.1 pointwise; increase nu or use weight.nu = auto)");
    }
  }
}

}  // namespace stdg
