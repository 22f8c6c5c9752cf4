// Copyright 2026 The linepatrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linepatrol/io.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

#include <json.hpp>

#include "linepatrol/error.h"

namespace linepatrol {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, path + ": " + what);
}

Json Parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    Fail("$", std::string("malformed JSON (") + e.what() + ")");
  }
}

const Json& Field(const Json& obj, const std::string& path,
                  const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

void OnlyKeys(const Json& obj, const std::string& path,
              std::initializer_list<const char*> keys) {
  if (!obj.is_object()) Fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) Fail(path, "unknown field \"" + it.key() + "\"");
  }
}

Rational Number(const Json& v, const std::string& path) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) {
      return Rational(mpz_class(std::to_string(v.get<uint64_t>())));
    }
    return Rational(mpz_class(std::to_string(v.get<int64_t>())));
  }
  if (v.is_number_float()) {
    Fail(path, "floating-point literal; write the number as a string");
  }
  if (!v.is_string()) Fail(path, "expected a number string");
  try {
    return ParseRational(v.get<std::string>());
  } catch (const Error&) {
    Fail(path, "\"" + v.get<std::string>() + "\" is not a number");
  }
}

int64_t Count(const Json& v, const std::string& path) {
  const Rational r = Number(v, path);
  if (!IsInteger(r)) Fail(path, "expected an integer");
  if (r > std::numeric_limits<int64_t>::max() ||
      r < std::numeric_limits<int64_t>::min()) {
    Fail(path, "integer out of range");
  }
  return FloorToInt64(r);
}

std::vector<Rational> Numbers(const Json& v, const std::string& path) {
  if (!v.is_array()) Fail(path, "expected a list");
  std::vector<Rational> out;
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::string Str(const Rational& v) { return ToString(v); }

std::string Str(double v) { return ToString(ExactRational(v)); }

Rational Real(int64_t stored, const Rational& unit) {
  return Rational(static_cast<long>(stored)) * unit;
}

// Columns of a day graph from its size: E = 2P + (K - 1) P (P + 1) / 2.
int ColumnsOf(int rows, int edges) {
  return 1 + (edges - 2 * rows) / (rows * (rows + 1) / 2);
}

std::string VertexName(const VertexId& v) {
  switch (v.kind) {
    case VertexId::Kind::kSource:
      return "source";
    case VertexId::Kind::kSink:
      return "sink";
    default:
      return "(" + std::to_string(v.column) + "," + std::to_string(v.row) +
             ")";
  }
}

// Edge endpoints in edge-id order.
std::vector<std::pair<VertexId, VertexId>> EdgeEnds(int rows, int columns) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int y = 1; y <= rows; ++y) {
    ends.emplace_back(VertexId::Source(), VertexId::Grid(1, y));
  }
  for (int x = 1; x < columns; ++x) {
    for (int y = 1; y <= rows; ++y) {
      for (int y2 = y; y2 <= rows; ++y2) {
        ends.emplace_back(VertexId::Grid(x, y), VertexId::Grid(x + 1, y2));
      }
    }
  }
  for (int y = 1; y <= rows; ++y) {
    ends.emplace_back(VertexId::Grid(columns, y), VertexId::Sink());
  }
  return ends;
}

// Unbiased integer in [lo, hi] from raw 64-bit draws, so the same seed gives
// the same numbers with every standard library.
int64_t Bounded(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  const uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  if (range == 0) return static_cast<int64_t>(rng());
  const uint64_t threshold = (0 - range) % range;
  while (true) {
    const uint64_t x = rng();
    if (x >= threshold) {
      return static_cast<int64_t>(static_cast<uint64_t>(lo) + x % range);
    }
  }
}

std::string ShortNumber(const Rational& v) { return ToString(v); }
std::string ShortNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

ProblemInstance ParseInstance(std::string_view text) {
  const Json doc = Parse(text);
  OnlyKeys(doc, "$", {"mode", "T", "M", "K", "D", "R", "targets"});
  RawInstance raw;
  if (auto it = doc.find("mode"); it != doc.end()) {
    if (!it->is_string()) Fail("$.mode", "expected a string");
    const std::string mode = it->get<std::string>();
    if (mode == "discrete") {
      raw.mode = Mode::kDiscrete;
    } else if (mode == "continuous") {
      raw.mode = Mode::kContinuous;
    } else {
      Fail("$.mode", "expected \"discrete\" or \"continuous\", got \"" +
                         mode + "\"");
    }
  }
  raw.horizon = Count(Field(doc, "$", "T"), "$.T");
  raw.space_max = Number(Field(doc, "$", "M"), "$.M");
  raw.patrol_count = Count(Field(doc, "$", "K"), "$.K");
  raw.speed = Number(Field(doc, "$", "D"), "$.D");
  raw.radius = Number(Field(doc, "$", "R"), "$.R");
  const Json& targets = Field(doc, "$", "targets");
  if (!targets.is_array()) Fail("$.targets", "expected a list");
  for (size_t a = 0; a < targets.size(); ++a) {
    const std::string path = "$.targets[" + std::to_string(a) + "]";
    const Json& t = targets[a];
    OnlyKeys(t, path, {"id", "positions", "weights"});
    TargetTrack track;
    track.id = static_cast<int>(a);
    if (auto it = t.find("id"); it != t.end()) {
      const int64_t id = Count(*it, path + ".id");
      if (id < std::numeric_limits<int>::min() ||
          id > std::numeric_limits<int>::max()) {
        Fail(path + ".id", "integer out of range");
      }
      track.id = static_cast<int>(id);
    }
    track.positions = Numbers(Field(t, path, "positions"), path + ".positions");
    track.weights = Numbers(Field(t, path, "weights"), path + ".weights");
    raw.targets.push_back(std::move(track));
  }
  return ValidateInstance(raw);
}

std::string SerializeInstance(const ProblemInstance& instance) {
  OrderedJson doc;
  doc["mode"] =
      instance.mode == Mode::kDiscrete ? "discrete" : "continuous";
  doc["T"] = instance.horizon;
  doc["M"] = Str(instance.space_max);
  doc["K"] = instance.patrol_count;
  doc["D"] = Str(instance.speed);
  doc["R"] = Str(instance.radius);
  OrderedJson targets = OrderedJson::array();
  for (const TargetTrack& track : instance.targets) {
    OrderedJson t;
    t["id"] = track.id;
    OrderedJson pos = OrderedJson::array(), w = OrderedJson::array();
    for (const Rational& x : track.positions) pos.push_back(Str(x));
    for (const Rational& x : track.weights) w.push_back(Str(x));
    t["positions"] = pos;
    t["weights"] = w;
    targets.push_back(t);
  }
  doc["targets"] = targets;
  return doc.dump(2) + "\n";
}

Rational ExactRational(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidArgument, "non-finite value");
  }
  return Rational(value);
}

template <typename Scalar>
std::string SerializeResult(const EquilibriumResult<Scalar>& result,
                            const ResultFormat& format) {
  const Rational& unit = result.strategy.unit;
  OrderedJson doc;
  doc["value"] = Str(result.value);
  doc["scalar"] = ScalarTraits<Scalar>::kExact ? "rational" : "double";
  doc["unit"] = Str(unit);
  OrderedJson support = OrderedJson::array();
  for (const auto& entry : result.strategy.support) {
    OrderedJson e;
    e["probability"] = Str(entry.probability);
    OrderedJson paths = OrderedJson::array();
    for (const auto& path : entry.strategy.paths) {
      OrderedJson p = OrderedJson::array();
      for (int64_t x : path) p.push_back(Str(Real(x, unit)));
      paths.push_back(p);
    }
    e["paths"] = paths;
    support.push_back(e);
  }
  doc["support"] = support;

  OrderedJson stats;
  stats["intervals"] = result.stats.total_intervals;
  stats["lp_iterations"] = result.stats.lp_iterations;
  stats["exact_iterations"] = result.stats.exact_iterations;
  stats["separation_rounds"] = result.stats.separation_rounds;
  stats["compatibility_rows"] = result.stats.compatibility_rows;
  stats["rewires"] = result.stats.uncross_iterations;
  doc["stats"] = stats;

  if (format.flows) {
    OrderedJson intervals = OrderedJson::array();
    for (const TimePartition& part : result.partitions.rounds) {
      OrderedJson round = OrderedJson::array();
      for (const Interval& in : part.intervals) {
        round.push_back({Str(Real(in.lo, unit)), Str(Real(in.hi, unit))});
      }
      intervals.push_back(round);
    }
    doc["intervals"] = intervals;
    OrderedJson flows = OrderedJson::array();
    for (size_t t = 0; t < result.flows.size(); ++t) {
      const auto& flow = result.flows[t];
      const int rows = result.partitions.rounds[t].size();
      const auto ends =
          EdgeEnds(rows, ColumnsOf(rows, static_cast<int>(flow.size())));
      OrderedJson round = OrderedJson::array();
      for (int e = 0; e < flow.size(); ++e) {
        if (flow[e] == Scalar(0)) continue;
        OrderedJson edge;
        edge["from"] = VertexName(ends[e].first);
        edge["to"] = VertexName(ends[e].second);
        edge["flow"] = Str(flow[e]);
        round.push_back(edge);
      }
      flows.push_back(round);
    }
    doc["flows"] = flows;
  }
  return doc.dump(2) + "\n";
}

StrategyDocument ParseStrategy(std::string_view text) {
  const Json doc = Parse(text);
  if (!doc.is_object()) Fail("$", "expected an object");
  StrategyDocument out;
  out.value = Number(Field(doc, "$", "value"), "$.value");
  const Json& support = Field(doc, "$", "support");
  if (!support.is_array()) Fail("$.support", "expected a list");

  std::vector<std::vector<std::vector<Rational>>> real;
  mpz_class lcm = 1;
  for (size_t i = 0; i < support.size(); ++i) {
    const std::string path = "$.support[" + std::to_string(i) + "]";
    const Json& entry = support[i];
    if (!entry.is_object()) Fail(path, "expected an object");
    const Rational p =
        Number(Field(entry, path, "probability"), path + ".probability");
    const Json& paths = Field(entry, path, "paths");
    if (!paths.is_array()) Fail(path + ".paths", "expected a list");
    real.emplace_back();
    for (size_t k = 0; k < paths.size(); ++k) {
      real.back().push_back(Numbers(
          paths[k], path + ".paths[" + std::to_string(k) + "]"));
      for (const Rational& x : real.back().back()) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
      }
    }
    out.strategy.support.push_back({PureStrategy{}, p});
  }
  if (!lcm.fits_slong_p()) Fail("$.support", "position grid too fine");
  const Rational scale(lcm);
  out.strategy.unit = Rational(1) / scale;
  for (size_t i = 0; i < real.size(); ++i) {
    for (const auto& path : real[i]) {
      std::vector<int64_t> stored;
      for (const Rational& x : path) {
        const Rational s = x * scale;
        if (abs(s) > Rational(std::numeric_limits<int64_t>::max() / 2)) {
          Fail("$.support[" + std::to_string(i) + "]", "position too large");
        }
        stored.push_back(FloorToInt64(s));
      }
      out.strategy.support[i].strategy.paths.push_back(std::move(stored));
    }
  }
  return out;
}

std::string SerializeReport(const CheckReport& report) {
  OrderedJson doc;
  doc["passed"] = report.passed();
  OrderedJson checks = OrderedJson::array();
  for (const CheckEntry& c : report.checks) {
    OrderedJson e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["skipped"] = c.skipped;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", c.magnitude);
    e["magnitude"] = buf;
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  doc["checks"] = checks;
  return doc.dump(2) + "\n";
}

ProblemInstance GenerateInstance(const GenOptions& options) {
  std::mt19937_64 rng(options.seed);
  const int64_t m = options.space_max;
  RawInstance raw;
  raw.horizon = options.horizon;
  raw.space_max = Rational(static_cast<long>(m));
  raw.patrol_count = options.patrols;
  raw.speed = Rational(static_cast<long>(
      options.speed ? *options.speed
                    : Bounded(rng, 0, std::max<int64_t>(1, m / 2))));
  raw.radius = Rational(static_cast<long>(
      options.radius ? *options.radius : Bounded(rng, 0, m / 4)));
  for (int a = 0; a < options.targets; ++a) {
    TargetTrack track;
    track.id = a;
    for (int t = 0; t < options.horizon; ++t) {
      track.positions.emplace_back(static_cast<long>(Bounded(rng, 0, m)));
      track.weights.emplace_back(
          static_cast<long>(Bounded(rng, 1, options.max_weight)));
    }
    raw.targets.push_back(std::move(track));
  }
  return ValidateInstance(raw);
}

template <typename Scalar>
std::string RenderTimeline(const ProblemInstance& instance,
                           const EquilibriumResult<Scalar>& result,
                           int max_rows) {
  std::string out = "value " + ShortNumber(result.value) + "\n";
  const auto& support = result.strategy.support;
  if (support.empty()) return out + "(no support strategies to draw)\n";

  const Rational& unit = result.strategy.unit;
  const int horizon = result.partitions.horizon();
  std::set<int64_t> marks;
  for (const TimePartition& part : result.partitions.rounds) {
    for (const Interval& in : part.intervals) {
      marks.insert(in.lo);
      marks.insert(in.hi);
    }
  }
  std::vector<int64_t> rows(marks.begin(), marks.end());
  if (max_rows >= 2 && static_cast<int>(rows.size()) > max_rows) {
    std::vector<int64_t> kept;
    const size_t n = rows.size();
    for (int i = 0; i < max_rows; ++i) {
      kept.push_back(rows[(n - 1) * i / (max_rows - 1)]);
    }
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    rows = kept;
  }
  // Row holding stored position p: the last row at or below it.
  auto row_of = [&](const Rational& p) {
    auto it = std::upper_bound(rows.begin(), rows.end(), p,
                               [](const Rational& v, int64_t r) {
                                 return v < Rational(static_cast<long>(r));
                               });
    return it == rows.begin() ? 0 : static_cast<int>(it - rows.begin()) - 1;
  };

  auto letter = [](size_t i) {
    if (i < 26) return static_cast<char>('A' + i);
    if (i < 52) return static_cast<char>('a' + (i - 26));
    return '*';
  };

  std::vector<std::vector<std::string>> cells(
      rows.size(), std::vector<std::string>(horizon));
  for (int t = 1; t <= horizon; ++t) {
    for (const Interval& in : result.partitions.round(t).intervals) {
      if (in.lo == 0) continue;
      auto it = std::lower_bound(rows.begin(), rows.end(), in.lo);
      if (it != rows.end() && *it == in.lo) cells[it - rows.begin()][t - 1] = "+";
    }
    for (int a = 0; a < instance.num_targets(); ++a) {
      std::string& c = cells[row_of(instance.position(a, t) / unit)][t - 1];
      if (c.find('T') == std::string::npos) c += 'T';
    }
    for (size_t i = 0; i < support.size(); ++i) {
      for (const auto& path : support[i].strategy.paths) {
        std::string& c =
            cells[row_of(Rational(static_cast<long>(path[t - 1])))][t - 1];
        if (c.find(letter(i)) == std::string::npos) c += letter(i);
      }
    }
  }

  std::vector<std::string> labels;
  size_t label_width = 3;
  for (int64_t r : rows) {
    labels.push_back(ToString(Real(r, unit)));
    label_width = std::max(label_width, labels.back().size());
  }
  size_t width = 3;
  for (int t = 1; t <= horizon; ++t) {
    width = std::max(width, ("t=" + std::to_string(t)).size());
  }
  for (const auto& row : cells) {
    for (const auto& c : row) width = std::max(width, c.size());
  }
  auto pad = [](std::string s, size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };

  out += "legend:";
  for (size_t i = 0; i < support.size() && i < 52; ++i) {
    out += std::string(" ") + letter(i) + " p=" +
           ShortNumber(support[i].probability);
  }
  if (support.size() > 52) {
    out += " * " + std::to_string(support.size() - 52) + " more";
  }
  out += "\n";
  out += pad("pos", label_width) + " |";
  for (int t = 1; t <= horizon; ++t) {
    out += " " + pad("t=" + std::to_string(t), width);
  }
  out += "\n" + std::string(label_width + 1, '-') + "+" +
         std::string(horizon * (width + 1), '-') + "\n";
  for (size_t i = rows.size(); i-- > 0;) {
    std::string line = pad(labels[i], label_width) + " |";
    for (int t = 0; t < horizon; ++t) line += " " + pad(cells[i][t], width);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

template std::string SerializeResult<Rational>(
    const EquilibriumResult<Rational>&, const ResultFormat&);
template std::string SerializeResult<double>(const EquilibriumResult<double>&,
                                             const ResultFormat&);
template std::string RenderTimeline<Rational>(
    const ProblemInstance&, const EquilibriumResult<Rational>&, int);
template std::string RenderTimeline<double>(const ProblemInstance&,
                                            const EquilibriumResult<double>&,
                                            int);

}  // namespace linepatrol
