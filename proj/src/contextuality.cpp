#include "negwit/contextuality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace negwit {

void Scenario::validate() const {
  if (labels.empty()) throw std::invalid_argument("scenario has no labels");
  if (outcomes.size() != labels.size()) throw std::invalid_argument("one outcome set per label required");
  for (const auto& o : outcomes)
    if (o.empty()) throw std::invalid_argument("empty outcome set");
  std::vector<bool> covered(labels.size(), false);
  std::vector<std::set<int>> sets;
  for (const auto& c : contexts) {
    if (c.empty()) throw std::invalid_argument("empty context");
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size()) throw std::invalid_argument("repeated label in a context");
    for (int x : c) {
      if (x < 0 || x >= int(labels.size())) throw std::invalid_argument("context refers to an unknown label");
      covered[x] = true;
    }
    sets.push_back(std::move(s));
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end())
    throw std::invalid_argument("contexts do not cover every label");
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = 0; j < sets.size(); ++j)
      if (i != j && std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
        throw std::invalid_argument("contexts must form an antichain");
}

std::int64_t Scenario::local_count(int c) const {
  std::int64_t n = 1;
  for (int x : contexts.at(c)) n *= std::int64_t(outcomes[x].size());
  return n;
}

std::int64_t Scenario::global_count() const {
  std::int64_t n = 1;
  for (const auto& o : outcomes) {
    n *= std::int64_t(o.size());
    if (n > max_global_sections) return max_global_sections + 1;
  }
  return n;
}

int Scenario::rows() const {
  std::int64_t r = 0;
  for (size_t c = 0; c < contexts.size(); ++c) r += local_count(int(c));
  return int(r);
}

std::vector<int> Scenario::decode_local(int c, std::int64_t s) const {
  const auto& ctx = contexts.at(c);
  std::vector<int> out(ctx.size());
  for (int i = int(ctx.size()) - 1; i >= 0; --i) {
    int k = int(outcomes[ctx[i]].size());
    out[i] = int(s % k);
    s /= k;
  }
  return out;
}

std::vector<int> Scenario::decode_global(std::int64_t g) const {
  std::vector<int> out(labels.size());
  for (int i = int(labels.size()) - 1; i >= 0; --i) {
    int k = int(outcomes[i].size());
    out[i] = int(g % k);
    g /= k;
  }
  return out;
}

Scenario Scenario::bell_222() {
  Scenario s;
  s.labels = {"a1", "a2", "b1", "b2"};
  s.outcomes.assign(4, {"0", "1"});
  s.contexts = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  return s;
}

namespace {

std::int64_t encode_restriction(const Scenario& sc, int c, const std::vector<int>& global) {
  std::int64_t s = 0;
  for (int x : sc.contexts[c]) s = s * std::int64_t(sc.outcomes[x].size()) + global[x];
  return s;
}

std::vector<int> row_offsets(const Scenario& sc) {
  std::vector<int> off(sc.contexts.size() + 1, 0);
  for (size_t c = 0; c < sc.contexts.size(); ++c) off[c + 1] = off[c] + int(sc.local_count(int(c)));
  return off;
}

}  // namespace

void EmpiricalModel::validate(double tol) const {
  scenario.validate();
  if (tables.size() != scenario.contexts.size()) throw std::invalid_argument("one table per context required");
  for (size_t c = 0; c < tables.size(); ++c) {
    if (std::int64_t(tables[c].size()) != scenario.local_count(int(c)))
      throw std::invalid_argument("table size does not match its context");
    double s = 0.0;
    for (double p : tables[c]) {
      if (!(p >= -tol)) throw std::invalid_argument("negative probability");
      s += p;
    }
    if (std::abs(s - 1.0) > tol) throw std::invalid_argument("table does not sum to 1");
  }
  // marginals on pairwise intersections must agree
  for (size_t c = 0; c < tables.size(); ++c)
    for (size_t d = c + 1; d < tables.size(); ++d) {
      std::vector<int> common;
      for (int x : scenario.contexts[c])
        if (std::find(scenario.contexts[d].begin(), scenario.contexts[d].end(), x) != scenario.contexts[d].end())
          common.push_back(x);
      if (common.empty()) continue;
      auto marginal = [&](size_t ctx) {
        std::map<std::vector<int>, double> m;
        const auto& labels = scenario.contexts[ctx];
        for (std::int64_t s = 0; s < std::int64_t(tables[ctx].size()); ++s) {
          auto sec = scenario.decode_local(int(ctx), s);
          std::vector<int> key;
          for (int x : common) key.push_back(sec[std::find(labels.begin(), labels.end(), x) - labels.begin()]);
          m[key] += tables[ctx][s];
        }
        return m;
      };
      auto mc = marginal(c), md = marginal(d);
      for (const auto& [k, v] : mc)
        if (std::abs(v - md[k]) > tol) throw std::invalid_argument("model violates compatibility");
    }
}

Eigen::VectorXd EmpiricalModel::flat() const {
  Eigen::VectorXd v(scenario.rows());
  int r = 0;
  for (const auto& t : tables)
    for (double p : t) v(r++) = p;
  return v;
}

Eigen::SparseMatrix<double> incidence(const Scenario& scenario) {
  scenario.validate();
  std::int64_t n = scenario.global_count();
  if (n > max_global_sections) throw std::length_error("too many global sections to enumerate");
  auto off = row_offsets(scenario);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(size_t(n) * scenario.contexts.size());
  for (std::int64_t g = 0; g < n; ++g) {
    auto global = scenario.decode_global(g);
    for (size_t c = 0; c < scenario.contexts.size(); ++c)
      t.emplace_back(off[c] + int(encode_restriction(scenario, int(c), global)), int(g), 1.0);
  }
  Eigen::SparseMatrix<double> M(off.back(), int(n));
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

NcfResult ncf(const EmpiricalModel& model, double tol) {
  model.validate();
  auto M = incidence(model.scenario);
  Eigen::VectorXd v = model.flat();
  SolverOptions o;
  o.tol = tol;
  LpResult lp = solve_lp(M, v, Eigen::VectorXd::Ones(M.cols()), o);
  NcfResult r;
  r.status = lp.status;
  r.ncf = std::clamp(lp.value, 0.0, 1.0);
  r.cf = 1.0 - r.ncf;
  r.b = lp.x.cwiseMax(0.0);
  return r;
}

double normalized_violation(const BellForm& form, const EmpiricalModel& model) {
  double score = form.a.dot(model.flat());
  double denom = form.norm - form.bound;
  if (!(denom > 0.0)) return 0.0;
  return std::max(0.0, score - form.bound) / denom;
}

BellForm bell_inequality(const EmpiricalModel& model, double tol) {
  model.validate();
  auto M = incidence(model.scenario);
  Eigen::VectorXd v = model.flat();
  SolverOptions o;
  o.tol = tol;
  LpResult lp = solve_lp(M, v, Eigen::VectorXd::Ones(M.cols()), o);
  // a = 1/|M| - y turns the dual of the NCF program into M^T a <= 0, a <= 1/|M|
  double inv = 1.0 / double(model.scenario.contexts.size());
  BellForm f;
  f.a = Eigen::VectorXd::Constant(v.size(), inv) - lp.dual.cwiseMax(0.0);
  f.bound = 0.0;
  auto off = row_offsets(model.scenario);
  for (size_t c = 0; c + 1 < off.size(); ++c) f.norm += f.a.segment(off[c], off[c + 1] - off[c]).maxCoeff();
  f.violation = f.a.dot(v) - f.bound;
  f.normalized_violation = normalized_violation(f, model);
  return f;
}

EmpiricalModel bin_outcomes(const EmpiricalModel& model, const std::vector<std::vector<int>>& maps) {
  model.validate();
  const Scenario& sc = model.scenario;
  if (maps.size() != sc.labels.size()) throw std::invalid_argument("one outcome map per label required");
  EmpiricalModel out;
  out.scenario = sc;
  for (size_t x = 0; x < maps.size(); ++x) {
    if (maps[x].size() != sc.outcomes[x].size()) throw std::invalid_argument("outcome map is not total");
    int k = 0;
    for (int v : maps[x]) {
      if (v < 0) throw std::invalid_argument("outcome map is not total");
      k = std::max(k, v + 1);
    }
    std::vector<std::string> names(k);
    std::vector<bool> hit(k, false);
    for (size_t o = 0; o < maps[x].size(); ++o) {
      int v = maps[x][o];
      names[v] += (hit[v] ? "|" : "") + sc.outcomes[x][o];
      hit[v] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw std::invalid_argument("outcome map is not onto");
    out.scenario.outcomes[x] = names;
  }
  for (size_t c = 0; c < sc.contexts.size(); ++c) {
    std::vector<double> t(out.scenario.local_count(int(c)), 0.0);
    for (std::int64_t s = 0; s < std::int64_t(model.tables[c].size()); ++s) {
      auto sec = sc.decode_local(int(c), s);
      std::int64_t idx = 0;
      for (size_t i = 0; i < sec.size(); ++i) {
        int x = sc.contexts[c][i];
        idx = idx * std::int64_t(out.scenario.outcomes[x].size()) + maps[x][sec[i]];
      }
      t[idx] += model.tables[c][s];
    }
    out.tables.push_back(std::move(t));
  }
  return out;
}

EmpiricalModel example_model(const std::string& name) {
  EmpiricalModel e;
  e.scenario = Scenario::bell_222();
  // contexts (a1,b1), (a1,b2), (a2,b1), (a2,b2); outcomes 00, 01, 10, 11
  if (name == "chsh") {
    double h1 = (2.0 + std::sqrt(2.0)) / 8.0, h2 = (2.0 - std::sqrt(2.0)) / 8.0;
    e.tables = {{h1, h2, h2, h1}, {h1, h2, h2, h1}, {h1, h2, h2, h1}, {h2, h1, h1, h2}};
  } else if (name == "pr_box") {
    e.tables = {{0.5, 0, 0, 0.5}, {0.5, 0, 0, 0.5}, {0.5, 0, 0, 0.5}, {0, 0.5, 0.5, 0}};
  } else if (name == "hardy") {
    // section 11 at (a1,b1) has no consistent global extension
    e.tables = {{0.4, 0.2, 0.2, 0.2}, {0.05, 0.55, 0.4, 0.0}, {0.05, 0.4, 0.55, 0.0}, {0.0, 0.45, 0.45, 0.1}};
  } else if (name == "identity_mix") {
    e.tables.assign(4, std::vector<double>(4, 0.25));
  } else {
    throw std::invalid_argument("unknown example model '" + name + "'");
  }
  return e;
}

nlohmann::json to_json(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario;
  nlohmann::json j;
  j["labels"] = sc.labels;
  nlohmann::json outs = nlohmann::json::object();
  for (size_t x = 0; x < sc.labels.size(); ++x) outs[sc.labels[x]] = sc.outcomes[x];
  j["outcomes"] = outs;
  nlohmann::json ctxs = nlohmann::json::array(), tables = nlohmann::json::array();
  for (size_t c = 0; c < sc.contexts.size(); ++c) {
    std::vector<std::string> names;
    for (int x : sc.contexts[c]) names.push_back(sc.labels[x]);
    ctxs.push_back(names);
    nlohmann::json t = nlohmann::json::object();
    for (std::int64_t s = 0; s < std::int64_t(model.tables[c].size()); ++s) {
      auto sec = sc.decode_local(int(c), s);
      std::string key;
      for (size_t i = 0; i < sec.size(); ++i) key += (i ? "," : "") + sc.outcomes[sc.contexts[c][i]][sec[i]];
      t[key] = model.tables[c][s];
    }
    tables.push_back(t);
  }
  j["contexts"] = ctxs;
  j["tables"] = tables;
  return j;
}

EmpiricalModel model_from_json(const nlohmann::json& j) {
  EmpiricalModel e;
  Scenario& sc = e.scenario;
  try {
    sc.labels = j.at("labels").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (size_t x = 0; x < sc.labels.size(); ++x) index[sc.labels[x]] = int(x);
    for (const auto& l : sc.labels) sc.outcomes.push_back(j.at("outcomes").at(l).get<std::vector<std::string>>());
    for (const auto& c : j.at("contexts")) {
      std::vector<int> ctx;
      for (const auto& l : c) {
        auto it = index.find(l.get<std::string>());
        if (it == index.end()) throw std::invalid_argument("context refers to an unknown label");
        ctx.push_back(it->second);
      }
      sc.contexts.push_back(ctx);
    }
    sc.validate();
    const auto& tables = j.at("tables");
    if (tables.size() != sc.contexts.size()) throw std::invalid_argument("one table per context required");
    for (size_t c = 0; c < sc.contexts.size(); ++c) {
      std::vector<double> t(sc.local_count(int(c)), 0.0);
      for (const auto& [key, val] : tables[c].items()) {
        std::vector<std::string> parts;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) parts.push_back(part);
        if (parts.size() != sc.contexts[c].size()) throw std::invalid_argument("outcome tuple '" + key + "' has wrong length");
        std::int64_t idx = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
          const auto& names = sc.outcomes[sc.contexts[c][i]];
          auto it = std::find(names.begin(), names.end(), parts[i]);
          if (it == names.end()) throw std::invalid_argument("unknown outcome '" + parts[i] + "'");
          idx = idx * std::int64_t(names.size()) + (it - names.begin());
        }
        t[idx] = val.get<double>();
      }
      e.tables.push_back(std::move(t));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed model JSON: ") + ex.what());
  }
  e.validate();
  return e;
}

}  // namespace negwit
