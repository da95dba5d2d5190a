#include "qrf/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrf {

namespace {

std::string tuple_text(const FieldTuple& t) {
  std::ostringstream out;
  out << "(" << t[0] << ", " << t[1] << ", " << t[2] << ", " << t[3] << ")";
  return out.str();
}

std::map<FieldTuple, int> index_by_value(const ReferenceFields& f, const char* where) {
  std::map<FieldTuple, int> index;
  for (int p = 0; p < static_cast<int>(f.values.size()); ++p) {
    if (!index.emplace(f.values[static_cast<std::size_t>(p)], p).second) {
      throw DegenerateFrameError(
          std::string(where) + ": field repeats the value " +
              tuple_text(f.values[static_cast<std::size_t>(p)]) +
              " and cannot identify points on its own",
          detect_degenerate_frame(f).groups);
    }
  }
  return index;
}

}  // namespace

DegeneracyReport detect_degenerate_frame(const ReferenceFields& f) {
  std::map<FieldTuple, std::vector<int>> buckets;
  for (int p = 0; p < static_cast<int>(f.values.size()); ++p) {
    buckets[f.values[static_cast<std::size_t>(p)]].push_back(p);
  }
  DegeneracyReport report;
  for (auto& [value, points] : buckets) {
    (void)value;
    if (points.size() >= 2) report.groups.push_back(std::move(points));
  }
  std::sort(report.groups.begin(), report.groups.end());
  return report;
}

// ── BranchGeometry ──────────────────────────────────────────────────────────

void BranchGeometry::validate() const {
  if (point_count < 1) throw DomainError("a branch geometry needs at least one point");
  for (const auto& [name, values] : observables) {
    if (static_cast<int>(values.size()) != point_count) {
      throw DomainError("observable '" + name + "' covers " + std::to_string(values.size()) +
                        " of " + std::to_string(point_count) + " points");
    }
  }
  for (const auto& [name, f] : fields) {
    if (static_cast<int>(f.values.size()) != point_count) {
      throw DomainError("field set '" + name + "' covers " + std::to_string(f.values.size()) +
                        " of " + std::to_string(point_count) + " points");
    }
    if (f.scale < 1) throw DomainError("field set '" + name + "' needs a positive scale");
  }
  for (const auto& [name, line] : worldlines) {
    for (const int p : line) {
      if (p < 0 || p >= point_count) {
        throw DomainError("worldline '" + name + "' leaves the point set");
      }
    }
  }
}

const ReferenceFields& BranchGeometry::field(const std::string& name) const {
  const auto it = fields.find(name);
  if (it == fields.end()) throw DomainError("no field set named '" + name + "'");
  return it->second;
}

const std::vector<double>& BranchGeometry::observable(const std::string& name) const {
  const auto it = observables.find(name);
  if (it == observables.end()) throw DomainError("no observable named '" + name + "'");
  return it->second;
}

const std::vector<int>& BranchGeometry::worldline(const std::string& name) const {
  const auto it = worldlines.find(name);
  if (it == worldlines.end()) throw DomainError("no worldline named '" + name + "'");
  return it->second;
}

// ── GeometrySuperposition ───────────────────────────────────────────────────

GeometrySuperposition GeometrySuperposition::of(
    std::vector<std::pair<Amplitude, BranchGeometry>> branches) {
  if (branches.empty()) throw DomainError("a superposition needs at least one branch");
  const int points = branches.front().second.point_count;
  double total = 0;
  for (const auto& [amp, geom] : branches) {
    geom.validate();
    if (geom.point_count != points) {
      throw DomainError("all branches must share one point-set cardinality");
    }
    total += std::norm(amp);
  }
  if (total <= kPruneThreshold * kPruneThreshold) {
    throw DomainError("superposition has no weight");
  }
  const double scale = 1.0 / std::sqrt(total);
  GeometrySuperposition out;
  for (auto& [amp, geom] : branches) {
    const Amplitude scaled = amp * scale;
    if (std::abs(scaled) <= kPruneThreshold) continue;
    out.amplitudes_.push_back(scaled);
    out.geometries_.push_back(std::move(geom));
  }
  if (out.geometries_.empty()) throw DomainError("superposition has no weight after pruning");
  double kept = 0;
  for (const auto& a : out.amplitudes_) kept += std::norm(a);
  const double rescale = 1.0 / std::sqrt(kept);
  for (auto& a : out.amplitudes_) a *= rescale;
  return out;
}

const BranchGeometry& GeometrySuperposition::geometry(std::size_t i) const {
  if (i >= geometries_.size()) throw DomainError("branch index outside the superposition");
  return geometries_[i];
}

Amplitude GeometrySuperposition::amplitude(std::size_t i) const {
  if (i >= amplitudes_.size()) throw DomainError("branch index outside the superposition");
  return amplitudes_[i];
}

// ── ComparisonMap ───────────────────────────────────────────────────────────

int ComparisonMap::apply(int p) const {
  if (p < 0 || p >= static_cast<int>(forward.size())) {
    throw DomainError("point " + std::to_string(p) + " outside the comparison map");
  }
  return forward[static_cast<std::size_t>(p)];
}

bool ComparisonMap::is_identity() const {
  for (int p = 0; p < static_cast<int>(forward.size()); ++p) {
    if (forward[static_cast<std::size_t>(p)] != p) return false;
  }
  return true;
}

ComparisonMap build_comparison(const BranchGeometry& a, const BranchGeometry& b,
                               const std::string& field_name) {
  a.validate();
  b.validate();
  if (a.point_count != b.point_count) {
    throw DomainError("comparison needs branches of equal cardinality");
  }
  const auto& fa = a.field(field_name);
  const auto& fb = b.field(field_name);
  if (fa.scale != fb.scale) {
    throw DomainError("field set '" + field_name + "' uses different scales across branches");
  }
  (void)index_by_value(fa, "first branch");
  const auto where_b = index_by_value(fb, "second branch");

  ComparisonMap map;
  map.forward.resize(static_cast<std::size_t>(a.point_count));
  std::vector<int> unmatched;
  for (int p = 0; p < a.point_count; ++p) {
    const auto it = where_b.find(fa.values[static_cast<std::size_t>(p)]);
    if (it == where_b.end()) {
      unmatched.push_back(p);
    } else {
      map.forward[static_cast<std::size_t>(p)] = it->second;
    }
  }
  if (!unmatched.empty()) {
    std::ostringstream msg;
    msg << "field set '" << field_name << "' takes values in the first branch that the second"
        << " never shows:";
    for (const int p : unmatched) {
      msg << " " << tuple_text(fa.values[static_cast<std::size_t>(p)]);
    }
    throw FieldMismatchError(msg.str(), std::move(unmatched));
  }
  map.provenance = "matched on '" + field_name + "'";
  return map;
}

// ── Quantum diffeos ─────────────────────────────────────────────────────────

BranchGeometry relabel(const BranchGeometry& g, const Permutation& d) {
  g.validate();
  if (d.degree() != g.point_count) {
    throw DomainError("relabelling permutation has the wrong degree");
  }
  BranchGeometry out;
  out.point_count = g.point_count;
  for (const auto& [name, values] : g.observables) {
    std::vector<double> moved(values.size());
    for (int p = 0; p < g.point_count; ++p) {
      moved[static_cast<std::size_t>(d.apply(p))] = values[static_cast<std::size_t>(p)];
    }
    out.observables.emplace(name, std::move(moved));
  }
  for (const auto& [name, f] : g.fields) {
    ReferenceFields moved;
    moved.scale = f.scale;
    moved.values.resize(f.values.size());
    for (int p = 0; p < g.point_count; ++p) {
      moved.values[static_cast<std::size_t>(d.apply(p))] = f.values[static_cast<std::size_t>(p)];
    }
    out.fields.emplace(name, std::move(moved));
  }
  for (const auto& [name, line] : g.worldlines) {
    std::vector<int> moved;
    moved.reserve(line.size());
    for (const int p : line) moved.push_back(d.apply(p));
    out.worldlines.emplace(name, std::move(moved));
  }
  return out;
}

GeometrySuperposition apply_quantum_diffeo(const GeometrySuperposition& s,
                                           const QuantumDiffeo& d) {
  if (d.per_branch.size() != s.branch_count()) {
    throw DomainError("need exactly one relabelling per branch");
  }
  std::vector<std::pair<Amplitude, BranchGeometry>> moved;
  moved.reserve(s.branch_count());
  for (std::size_t i = 0; i < s.branch_count(); ++i) {
    moved.emplace_back(s.amplitude(i), relabel(s.geometry(i), d.per_branch[i]));
  }
  return GeometrySuperposition::of(std::move(moved));
}

ComparisonMap transform_comparison(const ComparisonMap& c, const QuantumDiffeo& d) {
  if (d.per_branch.size() < 2) {
    throw DomainError("transforming a comparison needs the two branch relabellings");
  }
  const auto& d1 = d.per_branch[0];
  const auto& d2 = d.per_branch[1];
  if (d1.degree() != static_cast<int>(c.forward.size()) ||
      d2.degree() != static_cast<int>(c.forward.size())) {
    throw DomainError("relabelling degree does not match the comparison map");
  }
  const auto d1_inv = d1.inverse();
  ComparisonMap out;
  out.forward.resize(c.forward.size());
  for (int p = 0; p < static_cast<int>(c.forward.size()); ++p) {
    out.forward[static_cast<std::size_t>(p)] = d2.apply(c.apply(d1_inv.apply(p)));
  }
  out.provenance = c.provenance + ", relabelled";
  return out;
}

AlignmentResult qrf_change_to(const GeometrySuperposition& s, const std::string& field_name,
                              const ReferenceFields& target) {
  if (static_cast<int>(target.values.size()) != s.point_count()) {
    throw DomainError("target configuration covers the wrong number of points");
  }
  const auto target_index = index_by_value(target, "target configuration");

  QuantumDiffeo d;
  for (std::size_t i = 0; i < s.branch_count(); ++i) {
    const auto& f = s.geometry(i).field(field_name);
    if (f.scale != target.scale) {
      throw DomainError("field set '" + field_name + "' and target use different scales");
    }
    (void)index_by_value(f, "branch field");
    std::vector<int> images(static_cast<std::size_t>(s.point_count()));
    std::vector<int> unmatched;
    for (int p = 0; p < s.point_count(); ++p) {
      const auto it = target_index.find(f.values[static_cast<std::size_t>(p)]);
      if (it == target_index.end()) {
        unmatched.push_back(p);
      } else {
        images[static_cast<std::size_t>(p)] = it->second;
      }
    }
    if (!unmatched.empty()) {
      std::ostringstream msg;
      msg << "branch " << i << " field values never reach the target configuration at points:";
      for (const int p : unmatched) msg << " " << p;
      throw FieldMismatchError(msg.str(), std::move(unmatched));
    }
    d.per_branch.emplace_back(std::move(images));
  }

  AlignmentResult result{apply_quantum_diffeo(s, d), {}, std::move(d)};
  for (std::size_t i = 1; i < result.superposition.branch_count(); ++i) {
    auto c = build_comparison(result.superposition.geometry(0), result.superposition.geometry(i),
                              field_name);
    if (!c.is_identity()) {
      throw Error("internal: aligned branches disagree on the reference fields");
    }
    c.provenance = "aligned on '" + field_name + "'";
    result.comparisons.push_back(std::move(c));
  }
  return result;
}

bool is_localised(int p, int q, const ComparisonMap& c) {
  if (q < 0 || q >= static_cast<int>(c.forward.size())) {
    throw DomainError("point " + std::to_string(q) + " outside the comparison map");
  }
  return c.apply(p) == q;
}

// ── Events ──────────────────────────────────────────────────────────────────

namespace {

std::vector<int> crossings(const BranchGeometry& g, const std::string& line_a,
                           const std::string& line_b) {
  const auto& first = g.worldline(line_a);
  const auto& second = g.worldline(line_b);
  std::vector<int> met;
  for (const int p : first) {
    if (std::find(second.begin(), second.end(), p) == second.end()) continue;
    if (std::find(met.begin(), met.end(), p) == met.end()) met.push_back(p);
  }
  return met;
}

}  // namespace

std::vector<EventCandidate> find_events(const BranchGeometry& a, const BranchGeometry& b,
                                        const std::string& line_a, const std::string& line_b) {
  a.validate();
  b.validate();
  const auto in_a = crossings(a, line_a, line_b);
  const auto in_b = crossings(b, line_a, line_b);
  if (in_a.size() != in_b.size()) {
    throw DomainError("branches disagree on the number of crossings: " +
                      std::to_string(in_a.size()) + " against " + std::to_string(in_b.size()));
  }
  std::vector<EventCandidate> events;
  events.reserve(in_a.size());
  for (std::size_t k = 0; k < in_a.size(); ++k) {
    events.push_back(EventCandidate{in_a[k], in_b[k]});
  }
  return events;
}

// ── Dressed observables ─────────────────────────────────────────────────────

double RelationalObservable::value_at(std::size_t branch, const FieldTuple& x) const {
  if (branch >= per_branch.size()) throw DomainError("branch index outside the observable");
  const auto it = per_branch[branch].find(x);
  if (it == per_branch[branch].end()) {
    throw DomainError("the fields never read " + tuple_text(x) + " in branch " +
                      std::to_string(branch));
  }
  return it->second;
}

RelationalObservable dress(const GeometrySuperposition& s, const std::string& observable_name,
                           const std::string& field_name) {
  RelationalObservable out;
  out.scale = s.geometry(0).field(field_name).scale;
  for (std::size_t i = 0; i < s.branch_count(); ++i) {
    const auto& geom = s.geometry(i);
    const auto& values = geom.observable(observable_name);
    const auto& f = geom.field(field_name);
    if (f.scale != out.scale) {
      throw DomainError("field set '" + field_name + "' uses different scales across branches");
    }
    const auto index = index_by_value(f, "dressing field");
    std::map<FieldTuple, double> table;
    for (const auto& [tuple, p] : index) {
      table.emplace(tuple, values[static_cast<std::size_t>(p)]);
    }
    out.per_branch.push_back(std::move(table));
  }
  return out;
}

bool definite_at(const std::string& observable_name, int p, int q, const ComparisonMap& c,
                 const BranchGeometry& a, const BranchGeometry& b) {
  if (!is_localised(p, q, c)) {
    throw PreconditionError("points " + std::to_string(p) + " and " + std::to_string(q) +
                            " are not matched by the comparison map");
  }
  const double left = a.observable(observable_name)[static_cast<std::size_t>(p)];
  const double right = b.observable(observable_name)[static_cast<std::size_t>(q)];
  return std::abs(left - right) <= kObservableTolerance;
}

}  // namespace qrf
