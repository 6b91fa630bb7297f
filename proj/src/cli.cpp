#include "tilegraph/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <iomanip>
#include <json.hpp>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tilegraph/graph.hpp"
#include "tilegraph/ktheory.hpp"
#include "tilegraph/subshift.hpp"
#include "tilegraph/table_data.hpp"
#include "tilegraph/tiles.hpp"

namespace tilegraph::cli {

using nlohmann::json;

int exit_code_for(const Error& e) noexcept {
  switch (e.kind()) {
    case ErrorKind::Domain: return 1;
    case ErrorKind::Internal: return 2;
    case ErrorKind::Resource: return 3;
  }
  return 2;
}

namespace {

struct DataOptions {
  std::string tile;
  int q = 2;
  long long t = 0;
  std::string rule;
  std::string format = "text";
  std::size_t limit = kDefaultVertexLimit;
};

void add_data_options(CLI::App* app, DataOptions& o, bool tile_required = true) {
  auto* tile = app->add_option("--tile", o.tile, "row lengths, bottom row first, e.g. 2,1");
  if (tile_required) tile->required();
  app->add_option("--q", o.q, "alphabet size")->capture_default_str();
  app->add_option("--t", o.t, "trace")->capture_default_str();
  app->add_option("--rule", o.rule, "weights as (i,j):v;... (unlisted cells get 1)");
  app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app->add_option("--limit", o.limit, "largest vertex set to build")->capture_default_str();
}

BasicData data_from(const DataOptions& o) {
  Tile tile = parse_tile_text(o.tile);
  if (o.q < 2) throw Error(ErrorCode::InvalidInput, "q must be at least 2");
  std::vector<int> w = parse_rule(o.rule, tile, o.q);
  return make_basic_data(std::move(tile), o.q, o.t, std::move(w));
}

json integer_json(const zlin::Integer& v) {
  if (auto small = v.to_int64()) return *small;
  return v.to_string();
}

json group_json(const zlin::AbelianGroup& g) {
  json factors = json::array();
  for (const auto& d : g.invariant_factors) factors.push_back(integer_json(d));
  const auto order = g.order();
  return {{"free_rank", g.free_rank},
          {"invariant_factors", factors},
          {"order", order ? integer_json(*order) : json(nullptr)},
          {"group", g.to_string()}};
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json path_json(const Path& p) {
  return {{"degree", point_json(p.degree())}, {"rows_top_first", p.grid_lines()}};
}

json data_json(const BasicData& data) {
  json rule = json::object();
  for (std::size_t i = 0; i < data.w.size(); ++i) rule[to_string(data.tile.cells()[i])] = data.w[i];
  return {{"tile", data.tile.rows()}, {"q", data.q}, {"t", data.t}, {"rule", rule}};
}

std::string vertex_text(const Graph& g, std::size_t v) { return g.vertex_path(v).to_string(); }

json chain_json(const ReductionChain& chain) {
  json tiles = json::array();
  for (const auto& t : chain.tiles) tiles.push_back(t.rows());
  json multipliers = json::array();
  for (const auto& m : chain.multipliers) multipliers.push_back(integer_json(m));
  json steps = json::array();
  for (const auto& s : chain.steps)
    steps.push_back({{"from", s.from.rows()},
                     {"to", s.to.rows()},
                     {"multiplier", integer_json(s.multiplier)},
                     {"checked", s.attempted},
                     {"isomorphism_verified", s.verified},
                     {"classes", s.classes},
                     {"class_edges", s.class_edges},
                     {"detail", s.detail}});
  return {{"tiles", tiles},
          {"multipliers", multipliers},
          {"steps", steps},
          {"final_vertices", chain.final_vertices},
          {"final_blue_graph_complete", chain.final_complete},
          {"all_verified", chain.all_verified()}};
}

json report_json(const BasicData& data, std::size_t limit) {
  const Graph g(data, limit);
  const SkeletonReport sk = check_skeleton(g);
  const SimplicityReport simp = simplicity_hypotheses(data, limit);
  const KTheoryReport kt = compute_k_groups(g);
  const HypothesisFlags& h = kt.hypotheses;
  json out;
  out["data"] = data_json(data);
  out["vertices"] = g.vertex_count();
  out["skeleton"] = {{"vertex_count_ok", sk.vertex_count_ok},
                     {"entries_binary", sk.entries_binary},
                     {"blue_sums_ok", sk.blue_sums_ok},
                     {"red_sums_ok", sk.red_sums_ok},
                     {"commute", sk.commute},
                     {"blue_equal_or_orthogonal", sk.blue_equal_or_orthogonal},
                     {"red_equal_or_orthogonal", sk.red_equal_or_orthogonal},
                     {"ok", sk.ok()}};
  const bool loop = simp.loop.has_value();
  out["hypotheses"] = {{"c1_positive", h.c1_positive},
                       {"c2_positive", h.c2_positive},
                       {"trace_ok", h.trace_ok},
                       {"three_invertible_corners", h.three_invertible_corners},
                       {"h0_gt_h1", h.h0_gt_h1},
                       {"w0_gt_w1", h.w0_gt_w1},
                       {"aperiodic", h.aperiodic()},
                       {"simple", simp.all_hold()},
                       {"purely_infinite", simp.all_hold() && loop},
                       {"notes", simp.notes}};
  if (loop) {
    out["hypotheses"]["loop"] = path_json(*simp.loop);
    out["hypotheses"]["entrance"] = path_json(*simp.entrance);
  }
  json unit = {{"coordinates", json::array()},
               {"order", kt.unit.order ? integer_json(*kt.unit.order) : json(nullptr)},
               {"generator", kt.unit.generator}};
  for (const auto& c : kt.unit.coordinates) unit["coordinates"].push_back(integer_json(c));
  out["ktheory"] = {{"K0", group_json(kt.K0)},
                    {"K1", group_json(kt.K1)},
                    {"coker_delta1", group_json(kt.coker_delta1)},
                    {"ker_delta2_rank", kt.ker_delta2_rank},
                    {"unit_class", unit}};

  if (h.c1_positive && h.h0_gt_h1) {
    out["reduction_chain"] = chain_json(reduction_chain(data, true, limit));
  } else {
    out["reduction_chain"] = nullptr;
  }
  if (h.c1_positive && h.c2_positive) {
    const KernelReport k = kernel_triviality_check(data, limit);
    out["kernels"] = {{"ker_blue_rank", k.ker_blue_rank},
                      {"ker_red_rank", k.ker_red_rank},
                      {"ker_delta2_rank", k.ker_delta2_rank},
                      {"ker_reduced_rank", k.ker_reduced_rank ? json(*k.ker_reduced_rank) : json(nullptr)}};
  } else {
    out["kernels"] = nullptr;
  }
  if ((h.h0_gt_h1 || h.w0_gt_w1) && kt.K0.is_finite() && kt.K1.is_finite()) {
    out["orders_equal"] = k0_equals_k1_check(kt, data);
  } else {
    out["orders_equal"] = nullptr;
  }
  const GcdObservation gcd = gcd_order_observation(kt, data);
  out["gcd_observation"] = {{"gcd", integer_json(gcd.predicted)}, {"matches_K0_order", gcd.matches}};
  return out;
}

// Text rendering: one "path  value" line per leaf, keys aligned.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& lines) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), lines);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", lines);
    return;
  }
  lines.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
}

void emit(const json& j, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> lines;
  flatten(j, "", lines);
  std::size_t width = 0;
  for (const auto& [k, v] : lines) width = std::max(width, k.size());
  for (const auto& [k, v] : lines) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
}

// ---------------------------------------------------------------------------
// table

struct TableJob {
  std::vector<int> rows;
  int q = 2;
  std::optional<std::uint64_t> expected;
};

struct TableResult {
  std::string k0;
  std::string k1;
  std::optional<zlin::Integer> k0_order;
  std::optional<zlin::Integer> k1_order;
  std::string error;
  bool generator = false;
};

std::vector<TableResult> run_jobs(const std::vector<TableJob>& jobs, std::size_t limit, unsigned workers) {
  std::vector<TableResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      TableResult& r = results[i];
      try {
        const KTheoryReport kt = compute_k_groups(make_basic_data(Tile(jobs[i].rows), jobs[i].q), limit);
        r.k0 = kt.K0.to_string();
        r.k1 = kt.K1.to_string();
        r.k0_order = kt.K0.order();
        r.k1_order = kt.K1.order();
        r.generator = kt.unit.generator;
      } catch (const Error& e) {
        r.error = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return results;
}

std::string order_text(const std::optional<zlin::Integer>& v) { return v ? v->to_string() : "inf"; }

// ---------------------------------------------------------------------------

std::vector<int> rows_from_text(const std::string& text) { return parse_tile_text(text).rows(); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds 2-graphs from tiles and rules and computes their K-theory"};
  app.require_subcommand(1);

  DataOptions report_opts;
  auto* report = app.add_subcommand("report", "graph checks, hypotheses and K-theory for one data set");
  add_data_options(report, report_opts);

  std::string preset = "reference";
  std::vector<std::string> cells;
  std::vector<int> q_filter;
  bool check = false;
  unsigned jobs_count = std::max(1u, std::thread::hardware_concurrency());
  std::string table_format = "text";
  std::size_t table_limit = kDefaultVertexLimit;
  auto* table = app.add_subcommand("table", "orders of K0 and K1 over a list of tiles");
  table->add_option("--preset", preset, "built-in list of cells")->check(CLI::IsMember({"reference"}))->capture_default_str();
  table->add_option("--cell", cells, "explicit cell TILE:Q, e.g. 5:4 or 3,1,1:3 (repeatable)");
  table->add_option("--q", q_filter, "keep only these alphabet sizes");
  table->add_flag("--check", check, "compare with the stored values and fail on any difference");
  table->add_option("--jobs", jobs_count, "worker threads")->capture_default_str();
  table->add_option("--format", table_format, "text or json")->check(CLI::IsMember({"text", "json"}));
  table->add_option("--limit", table_limit, "largest vertex set to build")->capture_default_str();

  DataOptions sample_opts;
  std::string extent_text = "0,0";
  std::uint64_t seed = 1;
  bool enumerate = false;
  auto* sample = app.add_subcommand("sample", "random valid window of the shift (trace 0)");
  add_data_options(sample, sample_opts);
  sample->add_option("--extent,--bound", extent_text, "window degree a,b")->capture_default_str();
  sample->add_option("--seed", seed, "random seed")->capture_default_str();
  sample->add_flag("--enumerate", enumerate, "list every valid window instead of sampling one");

  DataOptions reduce_opts;
  auto* reduce_cmd = app.add_subcommand("reduce", "chain of smaller tiles describing the blue graph");
  add_data_options(reduce_cmd, reduce_opts);

  DataOptions aper_opts;
  std::string m_text;
  std::string n_text;
  std::string bound_text;
  std::vector<std::size_t> vertices;
  bool brute = false;
  auto* aper = app.add_subcommand("aperiodicity", "paths separating the shifts by m and n");
  add_data_options(aper, aper_opts);
  aper->add_option("--m", m_text, "first degree a,b")->required();
  aper->add_option("--n", n_text, "second degree a,b")->required();
  aper->add_option("--bound", bound_text, "largest degree searched (default m v n + (3,3))");
  aper->add_option("--vertex", vertices, "vertex indices (default all)");
  aper->add_flag("--search-only", brute, "skip the direct construction");

  DataOptions connect_opts;
  std::size_t from = 0;
  std::optional<std::size_t> to;
  auto* connect = app.add_subcommand("connect", "path between two vertices");
  add_data_options(connect, connect_opts);
  connect->add_option("--from", from, "range vertex index")->capture_default_str();
  connect->add_option("--to", to, "source vertex index (default the last vertex)");

  std::vector<const char*> argv{"tilegraph"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "InvalidInput: " << e.what() << "\n";
    return 1;
  }

  try {
    if (report->parsed()) {
      emit(report_json(data_from(report_opts), report_opts.limit), report_opts.format, out);
      return 0;
    }

    if (table->parsed()) {
      std::vector<TableJob> jobs;
      if (cells.empty()) {
        for (const auto& c : reference_table()) jobs.push_back({c.rows, c.q, c.order});
      } else {
        for (const auto& c : cells) {
          const auto colon = c.rfind(':');
          if (colon == std::string::npos) throw Error(ErrorCode::InvalidInput, "cells look like TILE:Q, got " + c);
          TableJob job{rows_from_text(c.substr(0, colon)), std::stoi(c.substr(colon + 1)), std::nullopt};
          for (const auto& ref : reference_table())
            if (ref.rows == job.rows && ref.q == job.q) job.expected = ref.order;
          jobs.push_back(job);
        }
      }
      if (!q_filter.empty())
        std::erase_if(jobs, [&](const TableJob& j) {
          return std::find(q_filter.begin(), q_filter.end(), j.q) == q_filter.end();
        });
      const auto results = run_jobs(jobs, table_limit, jobs_count);
      json rows = json::array();
      std::size_t mismatches = 0;
      std::size_t failures = 0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& r = results[i];
        json row = {{"tile", jobs[i].rows}, {"q", jobs[i].q}};
        if (!r.error.empty()) {
          ++failures;
          row["error"] = r.error;
        } else {
          row["K0"] = r.k0;
          row["K1"] = r.k1;
          row["K0_order"] = r.k0_order ? integer_json(*r.k0_order) : json(nullptr);
          row["K1_order"] = r.k1_order ? integer_json(*r.k1_order) : json(nullptr);
          row["unit_generates"] = r.generator;
        }
        if (jobs[i].expected) {
          row["expected"] = *jobs[i].expected;
          const zlin::Integer e(static_cast<unsigned long long>(*jobs[i].expected));
          const bool ok = r.error.empty() && r.k0_order && r.k1_order && *r.k0_order == e && *r.k1_order == e;
          row["match"] = ok;
          if (!ok) ++mismatches;
        }
        rows.push_back(row);
      }
      if (table_format == "json") {
        out << json{{"cells", rows}, {"mismatches", mismatches}}.dump(2) << "\n";
      } else {
        out << std::left << std::setw(12) << "tile" << std::setw(4) << "q" << std::setw(10) << "|K0|" << std::setw(10)
            << "|K1|" << std::setw(10) << "expected" << "status\n";
        for (std::size_t i = 0; i < jobs.size(); ++i) {
          const auto& r = results[i];
          std::string status = r.error.empty() ? "" : r.error;
          if (r.error.empty() && jobs[i].expected) status = rows[i]["match"].get<bool>() ? "ok" : "MISMATCH";
          out << std::left << std::setw(12) << ("[" + Tile(jobs[i].rows).to_string() + "]") << std::setw(4)
              << jobs[i].q << std::setw(10) << (r.error.empty() ? order_text(r.k0_order) : "-") << std::setw(10)
              << (r.error.empty() ? order_text(r.k1_order) : "-") << std::setw(10)
              << (jobs[i].expected ? std::to_string(*jobs[i].expected) : "-") << status << "\n";
        }
      }
      if (check && mismatches > 0) {
        err << "MismatchAgainstReference: " << mismatches << " cell(s) differ from the stored values\n";
        return 1;
      }
      if (failures > 0) {
        err << failures << " cell(s) failed\n";
        return 2;
      }
      return 0;
    }

    if (sample->parsed()) {
      const BasicData data = data_from(sample_opts);
      if (data.t != 0) throw Error(ErrorCode::TraceNonZero, "windows are sampled for trace 0 only");
      const Point extent = parse_point(extent_text);
      if (enumerate) {
        json windows = json::array();
        std::size_t count = 0;
        auto tile = std::make_shared<const Tile>(data.tile);
        enumerate_fillings(
            data, extent,
            [&](const std::vector<int>& grid) {
              Path p(tile, extent);
              for (int x = 0; x < p.width(); ++x)
                for (int y = 0; y < p.height(); ++y)
                  p.set({x, y}, grid[static_cast<std::size_t>(y) * p.width() + x]);
              ++count;
              if (sample_opts.format == "json") {
                windows.push_back(p.grid_lines());
              } else {
                for (const auto& line : p.grid_lines()) out << line << "\n";
                out << "\n";
              }
              return true;
            },
            sample_opts.limit * 256);
        if (sample_opts.format == "json")
          out << json{{"extent", point_json(extent)}, {"count", count}, {"windows", windows}}.dump(2) << "\n";
        else
          out << "windows: " << count << "\n";
        return 0;
      }
      const Graph g(data, sample_opts.limit);
      const WindowConfiguration w = sample_window(g, extent, seed);
      const bool valid = is_valid_window(data, w);
      const int placements = (extent.x + 1) * (extent.y + 1);
      if (sample_opts.format == "json") {
        out << json{{"extent", point_json(extent)},
                    {"seed", seed},
                    {"rows_top_first", w.grid_lines()},
                    {"cells", Region(data.tile, extent).size()},
                    {"valid", valid},
                    {"placements_checked", placements}}
                   .dump(2)
            << "\n";
      } else {
        for (const auto& line : w.grid_lines()) out << line << "\n";
        out << "valid: " << (valid ? "yes" : "NO") << " (" << placements << " placements checked, "
            << Region(data.tile, extent).size() << " cells, seed " << seed << ")\n";
      }
      if (!valid) throw Error(ErrorCode::TheoremViolation, "sampled window fails the rule");
      return 0;
    }

    if (reduce_cmd->parsed()) {
      const BasicData data = data_from(reduce_opts);
      json j = chain_json(reduction_chain(data, true, reduce_opts.limit));
      j["data"] = data_json(data);
      emit(j, reduce_opts.format, out);
      return 0;
    }

    if (aper->parsed()) {
      const BasicData data = data_from(aper_opts);
      const Graph g(data, aper_opts.limit);
      const Point m = parse_point(m_text);
      const Point n = parse_point(n_text);
      std::optional<Point> bound;
      if (!bound_text.empty()) bound = parse_point(bound_text);
      if (vertices.empty())
        for (std::size_t v = 0; v < g.vertex_count(); ++v) vertices.push_back(v);
      json results = json::array();
      for (std::size_t v : vertices) {
        if (v >= g.vertex_count()) throw Error(ErrorCode::InvalidInput, "no vertex " + std::to_string(v));
        const AperiodicityReport r = aperiodicity_witness(g, v, m, n, bound, !brute);
        json item = {{"vertex", v},
                     {"vertex_values", vertex_text(g, v)},
                     {"found", r.status == WitnessStatus::Found},
                     {"constructive", r.constructive},
                     {"bound", point_json(r.bound)}};
        if (r.witness) item["witness"] = path_json(*r.witness);
        if (!r.diagnostic.empty()) item["diagnostic"] = r.diagnostic;
        item["periodicity_proved"] = r.periodicity_proved;
        results.push_back(item);
      }
      emit(json{{"m", point_json(m)}, {"n", point_json(n)}, {"results", results}}, aper_opts.format, out);
      return 0;
    }

    if (connect->parsed()) {
      const BasicData data = data_from(connect_opts);
      const Graph g(data, connect_opts.limit);
      const std::size_t target = to.value_or(g.vertex_count() - 1);
      if (from >= g.vertex_count() || target >= g.vertex_count())
        throw Error(ErrorCode::InvalidInput, "vertex index out of range");
      const Path p = connect_vertices(g, from, target);
      json j = path_json(p);
      j["range"] = vertex_text(g, from);
      j["source"] = vertex_text(g, target);
      j["valid"] = is_valid_path(data, p);
      emit(j, connect_opts.format, out);
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "InvalidInput: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace tilegraph::cli
