#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "svg.hpp"
#include "tropkern/errors.hpp"
#include "tropkern/json_io.hpp"

using namespace tropkern;
using io::Json;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string fan_file;
  std::string out_file;
  std::string format = "json";
  bool check = false;
};

struct Loaded {
  std::string file;
  Json json;
  std::string type;
};

// Tags validation errors with the file they came from.
struct FileError {
  std::string file;
  io::ValidationError error;
};

template <class F>
auto in_file(const std::string& file, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const io::ValidationError& e) {
    throw FileError{file, e};
  }
}

Loaded load(const std::string& file) {
  return in_file(file, [&] {
    Json j = io::load_file(file);
    std::string t = io::object_type(j);
    return Loaded{file, j, t};
  });
}

void emit(const Options& o, const std::string& text) {
  if (o.out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out_file, std::ios::binary);
  if (!out) throw FileError{o.out_file, io::ValidationError("", "cannot write output file")};
  out << text;
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

std::vector<svg::Item> items_of(const TropicalCycle& c) {
  std::vector<svg::Item> out;
  TropicalCycle nf = normalize(c);
  for (const auto& wc : nf.cells()) out.push_back({wc.cell, wc.weight});
  return out;
}

std::vector<svg::Item> items_of(const PolyhedralComplex& c) {
  std::vector<svg::Item> out;
  for (std::size_t i : c.maximal_cells()) out.push_back({c.cell(i), std::nullopt});
  return out;
}

void emit_cycle(const Options& o, const TropicalCycle& c) {
  if (o.format == "svg")
    emit(o, svg::render(c.fan(), items_of(c)));
  else
    emit_json(o, io::write_cycle(c));
}

void emit_complex(const Options& o, const PolyhedralComplex& c) {
  if (o.format == "svg")
    emit(o, svg::render(c.fan(), items_of(c)));
  else
    emit_json(o, io::write_complex(c));
}

Json check_object(const Loaded& l, const FanPtr& fan) {
  Json results = Json::array();
  auto add = [&](const std::string& name, bool ok) { results.push_back(Json{{"file", l.file}, {"object", l.type}, {"check", name}, {"ok", ok}}); };
  in_file(l.file, [&] {
    if (l.type == "fan") {
      FanPtr f = io::read_fan(l.json);
      add("fan axioms", true);
      add("complete", f->is_complete());
      add("simplicial", f->is_simplicial());
    } else if (l.type == "cycle") {
      auto c = io::read_cycle(l.json, fan);
      add("balanced", check_balanced(c).balanced);
    } else if (l.type == "complex") {
      auto c = io::read_complex(l.json, fan);
      bool ctb = true;
      for (const auto& cell : c.cells()) ctb = ctb && is_constant_towards_boundary(cell);
      add("constant towards the boundary", ctb);
      add("simplicial", c.is_simplicial());
    } else if (l.type == "family") {
      bool ctb = true;
      for (const auto& m : io::read_family(l.json, fan)) ctb = ctb && is_constant_towards_boundary(m);
      add("constant towards the boundary", ctb);
    } else if (l.type == "function") {
      auto phi = io::read_function(l.json);
      add("pieces agree and cover", true);
      if (fan) {
        bool ok = true;
        try {
          recession_function(phi, fan);
        } catch (const Error&) {
          ok = false;
        }
        add("has a recession function on the fan", ok);
      }
    } else if (l.type == "divisor") {
      io::read_divisor(l.json, fan);
      add("piecewise linear on the fan", true);
    } else if (l.type == "greens") {
      io::read_greens(l.json, fan);
      add("Green functions of the fan", true);
    } else {
      throw io::ValidationError("/type", "unknown object type '" + l.type + "'");
    }
    return 0;
  });
  return results;
}

void require_inputs(const std::vector<Loaded>& in, std::vector<std::string> types) {
  if (in.size() != types.size()) throw FileError{"", io::ValidationError("", "expected " + std::to_string(types.size()) + " input file(s)")};
  for (std::size_t i = 0; i < types.size(); ++i)
    if (in[i].type != types[i]) throw FileError{in[i].file, io::ValidationError("/type", "expected a " + types[i])};
}

int run(const std::string& command, const Options& o) {
  FanPtr fan;
  if (!o.fan_file.empty()) fan = in_file(o.fan_file, [&] { return io::read_fan(io::load_file(o.fan_file)); });
  std::vector<Loaded> in;
  for (const auto& f : o.inputs) in.push_back(load(f));
  if (o.format != "json" && o.format != "svg") throw FileError{"", io::ValidationError("", "--format must be json or svg")};

  if (o.check) {
    Json results = Json::array();
    bool all = true;
    for (const auto& l : in)
      for (auto& r : check_object(l, fan)) {
        all = all && r["ok"].get<bool>();
        results.push_back(r);
      }
    emit_json(o, Json{{"format", io::kFormat}, {"type", "check"}, {"results", results}});
    return all ? 0 : 1;
  }

  auto cycle_at = [&](std::size_t i) { return in_file(in[i].file, [&] { return io::read_cycle(in[i].json, fan); }); };

  if (command == "check-balanced") {
    require_inputs(in, {"cycle"});
    auto c = cycle_at(0);
    auto r = check_balanced(c);
    Json out{{"format", io::kFormat}, {"type", "verdict"}, {"verdict", r.balanced ? "BALANCED" : "UNBALANCED"}};
    if (r.witness) {
      out["witness_id"] = r.witness->key();
      out["witness"] = io::write_tropical(*r.witness);
    }
    emit_json(o, out);
  } else if (command == "refine-simplicial") {
    require_inputs(in, {"complex"});
    auto c = in_file(in[0].file, [&] { return io::read_complex(in[0].json, fan); });
    emit_complex(o, simplicial_refine(c, c.fan_ptr()));
  } else if (command == "subdivide") {
    require_inputs(in, {"family"});
    auto fam = in_file(in[0].file, [&] { return io::read_family(in[0].json, fan); });
    if (fam.empty()) throw FileError{in[0].file, io::ValidationError("/members", "empty family")};
    emit_complex(o, subdivide_for_family(fam, fam[0].fan_ptr()));
  } else if (command == "corner-locus") {
    require_inputs(in, {"function", "cycle"});
    auto phi = in_file(in[0].file, [&] { return io::read_function(in[0].json); });
    auto c = cycle_at(1);
    if (phi.ambient_dim() != c.fan().ambient_dim()) throw FileError{in[0].file, io::ValidationError("/ambient_dim", "does not match the cycle")};
    emit_cycle(o, corner_locus(phi, c));
  } else if (command == "intersect") {
    require_inputs(in, {"divisor", "cycle"});
    auto c = cycle_at(1);
    auto d = in_file(in[0].file, [&] { return io::read_divisor(in[0].json, fan ? fan : c.fan_ptr()); });
    if (!(d.psi.fan() == c.fan())) throw FileError{in[0].file, io::ValidationError("/fan", "divisor and cycle live on different fans")};
    emit_cycle(o, toric_intersect(d, c));
  } else if (command == "ma" || command == "height") {
    require_inputs(in, {"greens", "cycle"});
    auto c = cycle_at(1);
    auto greens = in_file(in[0].file, [&] { return io::read_greens(in[0].json, fan ? fan : c.fan_ptr()); });
    if (!greens.empty() && !(greens[0].divisor.psi.fan() == c.fan()))
      throw FileError{in[0].file, io::ValidationError("/fan", "Green functions and cycle live on different fans")};
    if (command == "ma") {
      auto mu = ma_measure(greens, c);
      if (o.format == "svg") {
        emit(o, svg::render(mu.fan(), items_of(mu)));
      } else {
        Json m = io::write_cycle(mu);
        emit_json(o, Json{{"format", io::kFormat}, {"type", "measure"}, {"total_mass", to_string(degree(mu))}, {"measure", m}});
      }
    } else {
      if (greens.size() != static_cast<std::size_t>(c.dim()) + 1) throw DimensionMismatch("d+1 Green functions expected");
      NeronPair pair{c, {}};
      for (auto it = greens.rbegin(); it != greens.rend(); ++it) pair = star_product(*it, pair);
      auto terms = evaluate_terms(pair.accumulator);
      Rat total = 0;
      Json breakdown = Json::array();
      for (std::size_t j = 0; j < terms.size(); ++j) {
        total += terms[j];
        breakdown.push_back(Json{{"green", j}, {"value", to_string(terms[j])}});
      }
      if (local_height(greens, c) != total) throw InvariantViolation("induction formula and expanded evaluation disagree");
      emit_json(o, Json{{"format", io::kFormat}, {"type", "height"}, {"height", to_string(total)}, {"terms", breakdown}});
    }
  } else if (command == "plot") {
    if (in.size() != 1) throw FileError{"", io::ValidationError("", "expected 1 input file")};
    Options so = o;
    so.format = "svg";
    const auto& l = in[0];
    if (l.type == "cycle") {
      emit_cycle(so, cycle_at(0));
    } else if (l.type == "complex") {
      emit_complex(so, in_file(l.file, [&] { return io::read_complex(l.json, fan); }));
    } else if (l.type == "family") {
      auto fam = in_file(l.file, [&] { return io::read_family(l.json, fan); });
      std::vector<svg::Item> items;
      for (const auto& m : fam) items.push_back({m, std::nullopt});
      if (items.empty()) throw FileError{l.file, io::ValidationError("/members", "empty family")};
      emit(so, svg::render(items[0].cell.fan(), items));
    } else {
      throw FileError{l.file, io::ValidationError("/type", "plot draws cycles, complexes and families")};
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropkern: exact tropical toric intersection theory"};
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> positional;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"check-balanced", "balancing verdict for a cycle, with a witness face"},
      {"refine-simplicial", "simplicial refinement of a complex"},
      {"subdivide", "complex subdividing a family of polyhedra"},
      {"corner-locus", "corner locus of a function on a cycle (function, cycle)"},
      {"intersect", "toric divisor times cycle (divisor, cycle)"},
      {"ma", "Monge-Ampere measure and total mass (greens, cycle)"},
      {"height", "local height with per-term breakdown (greens, cycle)"},
      {"plot", "SVG drawing of a rank-2 cycle, complex or family"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("files", positional, "input files, in order");
  }
  app.add_option("--input,-i", o.inputs, "input file (repeatable; precedes positional files)");
  app.add_option("--fan", o.fan_file, "fan file for objects without an embedded fan");
  app.add_option("--out,-o", o.out_file, "write the result here instead of stdout");
  app.add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
  app.add_flag("--check", o.check, "run the invariant checks on the inputs and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  o.inputs.insert(o.inputs.end(), positional.begin(), positional.end());
  std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const FileError& e) {
    std::cerr << Json{{"error", "ValidationError"}, {"file", e.file}, {"pointer", e.error.pointer()}, {"message", e.error.what()}}.dump() << "\n";
    return 2;
  } catch (const io::ValidationError& e) {
    std::cerr << Json{{"error", "ValidationError"}, {"pointer", e.pointer()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << Json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}
