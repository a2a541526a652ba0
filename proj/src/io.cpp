#include "ccons/io.hpp"

#include "ccons/error.hpp"
#include "ccons/ergodicity.hpp"

namespace ccons::io {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
  return obj.at(key);
}

int as_int(const json& v, const std::string& what) {
  if (!v.is_number_integer()) bad(what + " must be an integer");
  return v.get<int>();
}

double as_real(const json& v, const std::string& what) {
  if (!v.is_number()) bad(what + " must be a number");
  return v.get<double>();
}

json vertex_list(VertexSet s) { return s.members(); }

VertexSet vertex_set(const json& v, const std::string& what) {
  if (!v.is_array()) bad(what + " must be an array of vertices");
  VertexSet s;
  for (const auto& e : v) {
    const int idx = as_int(e, what);
    if (idx < 0 || idx >= kMaxVertices) bad(what + " has vertex " + std::to_string(idx) + " out of range");
    s.insert(idx);
  }
  return s;
}

json steps_to_json(const std::vector<WitnessStep>& steps) {
  json arr = json::array();
  for (const auto& s : steps) {
    arr.push_back({{"matrix", s.matrix}, {"s", vertex_list(s.s)}, {"s_prime", vertex_list(s.s_prime)}});
  }
  return arr;
}

std::vector<WitnessStep> steps_from_json(const json& arr, const std::string& what) {
  if (!arr.is_array()) bad(what + " must be an array");
  std::vector<WitnessStep> out;
  for (std::size_t l = 0; l < arr.size(); ++l) {
    const std::string here = what + "[" + std::to_string(l) + "]";
    const json& name = field(arr[l], "matrix");
    if (!name.is_string()) bad(here + ".matrix must be a string");
    out.push_back({name.get<std::string>(), vertex_set(field(arr[l], "s"), here + ".s"),
                   vertex_set(field(arr[l], "s_prime"), here + ".s_prime")});
  }
  return out;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

MatrixSet matrix_set_from_json(const json& doc) {
  if (!doc.is_object()) bad("document must be a JSON object");
  const int n = as_int(field(doc, "n"), "n");

  Tolerances tol;
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (!t.is_object()) bad("tolerances must be an object");
    if (t.contains("row_sum_tol")) tol.row_sum_tol = as_real(t.at("row_sum_tol"), "row_sum_tol");
    if (t.contains("zero_tol")) tol.zero_tol = as_real(t.at("zero_tol"), "zero_tol");
    if (t.contains("equality_tol")) tol.equality_tol = as_real(t.at("equality_tol"), "equality_tol");
  }

  const json& clusters = field(doc, "clusters");
  if (!clusters.is_array()) bad("clusters must be an array");
  std::vector<std::vector<int>> sets;
  for (const auto& cl : clusters) {
    if (!cl.is_array()) bad("each cluster must be an array of vertices");
    std::vector<int> members;
    for (const auto& v : cl) members.push_back(as_int(v, "cluster vertex"));
    sets.push_back(std::move(members));
  }
  Clustering clustering = validate_clustering(sets, n);

  const json& matrices = field(doc, "matrices");
  if (!matrices.is_array() || matrices.empty()) bad("matrices must be a nonempty array");
  std::vector<StochasticMatrix> validated;
  std::vector<std::string> names;
  for (std::size_t m = 0; m < matrices.size(); ++m) {
    const json& entry = matrices[m];
    std::string name = "P" + std::to_string(m);
    if (entry.is_object() && entry.contains("name")) {
      if (!entry.at("name").is_string()) bad("matrix name must be a string");
      name = entry.at("name").get<std::string>();
    }
    const json& rows = field(entry, "rows");
    if (!rows.is_array()) bad("matrix '" + name + "': rows must be an array");
    RawMatrix raw;
    for (const auto& r : rows) {
      if (!r.is_array()) bad("matrix '" + name + "': each row must be an array");
      std::vector<double> vals;
      for (const auto& x : r) vals.push_back(as_real(x, "matrix '" + name + "' entry"));
      raw.push_back(std::move(vals));
    }
    if (static_cast<int>(raw.size()) != n) {
      fail(ErrorCode::DimensionMismatch,
           "matrix '" + name + "' has " + std::to_string(raw.size()) + " rows, n=" + std::to_string(n));
    }
    try {
      validated.push_back(validate_stochastic(raw, tol));
    } catch (const Error& e) {
      throw Error(e.code(), "matrix '" + name + "': " + e.what());
    }
    names.push_back(std::move(name));
  }
  return MatrixSet(std::move(validated), std::move(names), std::move(clustering));
}

MatrixSet parse_matrix_set(const std::string& text) { return matrix_set_from_json(parse_json(text)); }

json to_json(const Tolerances& tol) {
  return {{"row_sum_tol", tol.row_sum_tol}, {"zero_tol", tol.zero_tol}, {"equality_tol", tol.equality_tol}};
}

json to_json(const MatrixSet& set) {
  json doc;
  doc["n"] = set.n();
  doc["clusters"] = set.clustering().clusters();
  json mats = json::array();
  for (int m = 0; m < set.size(); ++m) {
    mats.push_back({{"name", set.name(m)}, {"rows", set.matrix(m).to_rows()}});
  }
  doc["matrices"] = std::move(mats);
  doc["tolerances"] = to_json(set.tolerances());
  return doc;
}

json to_json(const AssumptionReport& r, const MatrixSet& set) {
  json out;
  out["a1_self_loops"] = r.a1_self_loops;
  out["a2_symmetric_pattern"] = r.a2_symmetric_pattern;
  out["a3_delta"] = r.a3_delta ? json(*r.a3_delta) : json(nullptr);
  out["a4_doubly_stochastic"] = r.a4_doubly_stochastic;
  out["cut_balance_constant"] = r.cut_balance_constant ? json(*r.cut_balance_constant) : json(nullptr);
  out["common_influence"] = r.common_influence;
  out["regime"] = std::string(to_string(r.regime));
  json per = json::array();
  for (int m = 0; m < set.size(); ++m) {
    const auto tau = tau_c(set.matrix(m), set.clustering());
    json entry;
    entry["name"] = set.name(m);
    entry["common_influence"] = r.influence[m].holds;
    entry["block_sums"] = r.influence[m].block_sums;
    entry["tau_c"] = {{"value", tau.value},
                      {"cluster", tau.arg_cluster},
                      {"pair", {tau.arg_pair.first, tau.arg_pair.second}}};
    entry["dobrushin"] = dobrushin(set.matrix(m));
    per.push_back(std::move(entry));
  }
  out["matrices"] = std::move(per);
  return out;
}

json to_json(const Witness& w) {
  return {{"seed", {{"i", w.i}, {"j", w.j}, {"cluster", w.cluster}}},
          {"prefix", steps_to_json(w.prefix)},
          {"cycle", steps_to_json(w.cycle)}};
}

Witness witness_from_json(const json& doc) {
  if (!doc.is_object()) bad("witness must be a JSON object");
  const json& seed = field(doc, "seed");
  Witness w;
  w.i = as_int(field(seed, "i"), "seed.i");
  w.j = as_int(field(seed, "j"), "seed.j");
  w.cluster = as_int(field(seed, "cluster"), "seed.cluster");
  if (doc.contains("prefix")) w.prefix = steps_from_json(doc.at("prefix"), "prefix");
  w.cycle = steps_from_json(field(doc, "cycle"), "cycle");
  return w;
}

Witness parse_witness(const std::string& text) { return witness_from_json(parse_json(text)); }

json to_json(const DecisionResult& r) {
  json out;
  out["verdict"] = std::string(to_string(r.verdict));
  out["regime"] = std::string(to_string(r.regime));
  out["common_influence"] = r.common_influence;
  out["stats"] = {{"explored_states", r.stats.explored_states},
                  {"seeds_examined", r.stats.seeds_examined},
                  {"transitions", r.stats.transitions},
                  {"live_states", r.stats.live_states}};
  if (r.witness) {
    out["witness_length"] = r.witness->length();
    out["witness"] = to_json(*r.witness);
  }
  return out;
}

json to_json(const ConsensusProfile& p) {
  json out;
  out["converged"] = p.converged;
  out["per_cluster_values"] = p.per_cluster_values ? json(*p.per_cluster_values) : json(nullptr);
  out["convergence_time"] = p.convergence_time ? json(*p.convergence_time) : json(nullptr);
  out["final_spread"] = p.final_spread;
  return out;
}

}  // namespace ccons::io
