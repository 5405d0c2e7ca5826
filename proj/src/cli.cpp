#include "topsurg/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "topsurg/analysis.hpp"
#include "topsurg/error.hpp"
#include "topsurg/knot.hpp"
#include "topsurg/morse.hpp"
#include "topsurg/presentation.hpp"
#include "topsurg/wirtinger.hpp"

namespace topsurg::cli {

namespace {

using json = nlohmann::json;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::SearchTooLarge: return kInconclusive;
    case ErrorKind::Internal: return kInternal;
    default: return kInputError;
  }
}

// Signals a computation that finished without an answer; the partial result
// has already been printed.
struct Inconclusive {
  std::string what;
};

std::string number(double x) { return json(x).dump(); }

ReidemeisterMove parse_move(const std::string& text) {
  static const std::regex re(R"(\s*(R1_add|R1_remove|R2_add|R2_remove|R3)\s*\(([^)]*)\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw Error(ErrorKind::InvalidArgument, "cannot parse move '" + text + "'");
  }
  std::vector<int> a;
  std::stringstream ss(m[2].str());
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      a.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad move argument '" + part + "'");
    }
  }
  const std::string name = m[1];
  const auto want = [&](std::size_t n) {
    if (a.size() != n) throw Error(ErrorKind::InvalidArgument, name + " takes " + std::to_string(n) + " arguments");
  };
  if (name == "R1_add") {
    want(2);
    return ReidemeisterMove::r1_add(a[0], a[1]);
  }
  if (name == "R1_remove") {
    want(1);
    return ReidemeisterMove::r1_remove(a[0]);
  }
  if (name == "R2_add") {
    want(2);
    return ReidemeisterMove::r2_add(a[0], a[1]);
  }
  if (name == "R2_remove") {
    want(2);
    return ReidemeisterMove::r2_remove(a[0], a[1]);
  }
  want(3);
  return ReidemeisterMove::r3(a[0], a[1], a[2]);
}

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  int run(const std::vector<std::string>& args, std::ostream& err);

 private:
  std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in_), {}};
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    return {std::istreambuf_iterator<char>(f), {}};
  }

  void emit_presentation(const Presentation& p) {
    out_ << (pres_format_ == "json" ? to_json(p) : to_text(p)) << '\n';
  }

  void emit_samples(const std::vector<LevelSetSample>& samples) {
    if (format_ == "csv") out_ << to_csv(samples);
    else if (format_ == "obj") out_ << to_obj(samples);
    else out_ << to_json(samples) << '\n';
  }

  MorseForm form() const {
    MorseForm f{dim_, index_, reversed_};
    validate(f);
    return f;
  }

  CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& about, std::function<void()> body) {
    auto* sub = parent->add_subcommand(name, about);
    actions_.emplace_back(sub, std::move(body));
    return sub;
  }

  void build(CLI::App& app);

  std::istream& in_;
  std::ostream& out_;
  std::vector<std::pair<CLI::App*, std::function<void()>>> actions_;

  std::string file_;
  std::string file2_;
  std::string format_ = "json";
  std::string pres_format_ = "text";
  std::uint64_t seed_ = 0;
  std::int64_t framing_ = 0;
  std::optional<std::int64_t> framing_opt_;
  std::size_t max_cosets_ = kDefaultMaxCosets;
  int sym_ = 3;
  std::int64_t lens_p_ = 0;
  std::string move_;

  int dim_ = 2;
  int index_ = 1;
  bool reversed_ = false;
  std::vector<double> point_;
  std::vector<double> t_list_;
  double t_from_ = -0.5;
  double t_to_ = 0.5;
  int t_steps_ = 3;
  int resolution_ = 32;
  std::vector<double> pole_;
  bool inverse_ = false;
  int steps_ = 16;
  double twist_ = 0;
  std::vector<int> fixed_;
  bool full_turn_ = false;
  std::optional<double> radius_;
};

void Runner::build(CLI::App& app) {
  app.set_config("--config", "", "key=value file; flags on the command line take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.add_option("--seed", seed_, "seed for randomized sampling")->capture_default_str();

  const auto input = [&](CLI::App* s) { s->add_option("file", file_, "input file, stdin when absent or -"); };
  const auto pres_format = [&](CLI::App* s) {
    s->add_option("--format", pres_format_, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  const auto cloud_format = [&](CLI::App* s) {
    s->add_option("--format", format_, "json, csv or obj")->check(CLI::IsMember({"json", "csv", "obj"}));
  };

  // knot
  auto* knot = app.add_subcommand("knot", "knot diagram codecs and moves");
  knot->require_subcommand(1);
  input(leaf(knot, "parse", "diagram in any format to JSON", [&] { out_ << to_json(parse_diagram(slurp(file_))) << '\n'; }));
  input(leaf(knot, "validate", "check a diagram", [&] {
    const auto d = parse_diagram(slurp(file_));
    out_ << json{{"valid", true}, {"crossings", d.crossing_count()}, {"arcs", d.arc_count()}}.dump() << '\n';
  }));
  input(leaf(knot, "writhe", "sum of crossing signs", [&] { out_ << writhe(parse_diagram(slurp(file_))) << '\n'; }));
  input(leaf(knot, "canon", "canonical signed Gauss code", [&] { out_ << serialize(parse_diagram(slurp(file_))) << '\n'; }));
  input(leaf(knot, "moves", "list applicable Reidemeister moves", [&] {
    for (const auto& m : applicable_moves(parse_diagram(slurp(file_)))) out_ << to_string(m) << '\n';
  }));
  auto* move = leaf(knot, "move", "apply a Reidemeister move, e.g. R2_add(0,1)", [&] {
    out_ << serialize(reidemeister_apply(parse_diagram(slurp(file_)), parse_move(move_))) << '\n';
  });
  move->add_option("--apply", move_, "move as printed by knot moves")->required();
  input(move);

  // group
  auto* group = app.add_subcommand("group", "presentations, surgery groups and their invariants");
  group->require_subcommand(1);
  auto* wirt = leaf(group, "wirtinger", "Wirtinger presentation of a diagram",
                    [&] { emit_presentation(wirtinger(parse_diagram(slurp(file_)))); });
  input(wirt);
  pres_format(wirt);
  auto* lon = leaf(group, "longitude", "blackboard or framed longitude word", [&] {
    const auto d = parse_diagram(slurp(file_));
    const auto l = framing_opt_ ? framed_longitude(d, *framing_opt_) : blackboard_longitude(d);
    json j{{"word", to_text(l.word, arc_names(d.arc_count()))}, {"exponent_sum", l.exponent_sum}};
    if (framing_opt_) j["framing"] = *framing_opt_;
    out_ << j.dump() << '\n';
  });
  lon->add_option("--framing", framing_opt_, "integer framing; blackboard when absent");
  input(lon);
  auto* surg = leaf(group, "surgery", "fundamental group of integral surgery on a knot",
                    [&] { emit_presentation(surgery_group({parse_diagram(slurp(file_)), framing_})); });
  surg->add_option("--framing", framing_, "integer framing")->required();
  input(surg);
  pres_format(surg);
  input(leaf(group, "abelianize", "abelian invariants as JSON",
             [&] { out_ << to_json(abelianize(parse_presentation(slurp(file_)))) << '\n'; }));
  auto* order = leaf(group, "order", "coset enumeration over the trivial subgroup", [&] {
    const auto r = todd_coxeter(parse_presentation(slurp(file_)), max_cosets_);
    out_ << to_json(r) << '\n';
    if (!r.finite()) throw Inconclusive{"coset bound " + std::to_string(max_cosets_) + " reached"};
  });
  order->add_option("--max-cosets", max_cosets_, "coset bound")->capture_default_str()->check(CLI::PositiveNumber);
  input(order);
  auto* homs = leaf(group, "homs", "homomorphisms into the symmetric group S_n", [&] {
    const auto p = parse_presentation(slurp(file_));
    out_ << json{{"n", sym_}, {"homs", count_homs(p, sym_)}, {"surjections", count_surjections(p, sym_)}}.dump()
         << '\n';
  });
  homs->add_option("--sym", sym_, "n, at most 6")->capture_default_str();
  input(homs);
  auto* dist = leaf(group, "distinguish", "try to tell two presentations apart", [&] {
    if (file_ == "-" && file2_ == "-") throw Error(ErrorKind::InvalidArgument, "only one input may come from stdin");
    const auto p1 = parse_presentation(slurp(file_));
    const auto p2 = parse_presentation(slurp(file2_));
    out_ << to_json(distinguish(p1, p2, max_cosets_)) << '\n';
  });
  dist->add_option("first", file_, "first presentation")->required();
  dist->add_option("second", file2_, "second presentation")->required();
  dist->add_option("--max-cosets", max_cosets_, "coset bound")->capture_default_str()->check(CLI::PositiveNumber);
  auto* lens = leaf(group, "lens", "fundamental group of the lens space L(p,1)",
                    [&] { emit_presentation(lens_space_group(lens_p_)); });
  lens->add_option("--p", lens_p_, "p >= 0; 0 gives S^1 x S^2")->required();
  pres_format(lens);
  auto* csum = leaf(group, "connect-sum", "free product with Z, the effect of a 0-surgery",
                    [&] { emit_presentation(connected_sum_group(parse_presentation(slurp(file_)))); });
  input(csum);
  pres_format(csum);
  auto* simp = leaf(group, "simplify", "Tietze generator elimination",
                    [&] { emit_presentation(tietze_eliminate(parse_presentation(slurp(file_)))); });
  input(simp);
  pres_format(simp);

  // morse
  auto* morse = app.add_subcommand("morse", "local Morse forms and their level sets");
  morse->require_subcommand(1);
  const auto form_opts = [&](CLI::App* s) {
    s->add_option("--dim", dim_, "ambient dimension")->capture_default_str();
    s->add_option("--index", index_, "number of negative squares")->capture_default_str();
    s->add_flag("--reversed", reversed_, "use the time-reversed form");
  };
  auto* eval = leaf(morse, "eval", "value of the form at a point", [&] { out_ << number(evaluate(form(), point_)) << '\n'; });
  form_opts(eval);
  eval->add_option("--point", point_, "comma-separated coordinates")->required()->delimiter(',');
  auto* grad = leaf(morse, "grad", "gradient of the form at a point", [&] {
    const auto g = gradient(form(), point_);
    for (std::size_t j = 0; j < g.size(); ++j) out_ << (j ? "," : "") << number(g[j]);
    out_ << '\n';
  });
  form_opts(grad);
  grad->add_option("--point", point_, "comma-separated coordinates")->required()->delimiter(',');
  form_opts(leaf(morse, "index", "Morse index from the Hessian", [&] { out_ << hessian_index(form()) << '\n'; }));
  auto* levels = leaf(morse, "levels", "level-set samples for a list of t", [&] {
    std::vector<LevelSetSample> samples;
    for (double t : t_list_) samples.push_back(sample_level_set(form(), t, resolution_, seed_));
    emit_samples(samples);
  });
  form_opts(levels);
  levels->add_option("--t-list", t_list_, "comma-separated levels")->required()->delimiter(',');
  levels->add_option("--resolution", resolution_, "samples per parameter direction")->capture_default_str();
  cloud_format(levels);
  auto* seq = leaf(morse, "sequence", "level sets on an evenly spaced t grid", [&] {
    if (t_steps_ < 1) throw Error(ErrorKind::InvalidArgument, "--t-steps must be at least 1");
    std::vector<double> grid;
    for (int k = 0; k < t_steps_; ++k)
      grid.push_back(t_steps_ == 1 ? t_from_ : t_from_ + (t_to_ - t_from_) * k / (t_steps_ - 1));
    emit_samples(surgery_sequence(form(), grid, resolution_, seed_));
  });
  form_opts(seq);
  seq->add_option("--t-from", t_from_, "first level")->capture_default_str();
  seq->add_option("--t-to", t_to_, "last level")->capture_default_str();
  seq->add_option("--t-steps", t_steps_, "number of levels")->capture_default_str();
  seq->add_option("--resolution", resolution_, "samples per parameter direction")->capture_default_str();
  cloud_format(seq);
  auto* stereo = leaf(morse, "project-stereo", "stereographic projection of sphere samples", [&] {
    auto samples = parse_samples(slurp(file_));
    for (auto& s : samples)
      s.cloud = inverse_ ? stereographic_inverse(s.cloud, pole_) : stereographic_project(s.cloud, pole_);
    emit_samples(samples);
  });
  stereo->add_option("--pole", pole_, "unit vector, comma-separated")->required()->delimiter(',');
  stereo->add_flag("--inverse", inverse_, "map the plane back onto the sphere");
  input(stereo);
  cloud_format(stereo);
  auto* rev = leaf(morse, "revolve", "rotate samples about fixed axes into a new coordinate", [&] {
    auto samples = parse_samples(slurp(file_));
    for (auto& s : samples) {
      auto axes = fixed_;
      if (axes.empty())
        for (int j = 0; j + 1 < s.cloud.dim; ++j) axes.push_back(j);
      s.cloud = revolve(s.cloud, axes, steps_, twist_, full_turn_);
    }
    emit_samples(samples);
  });
  rev->add_option("--steps", steps_, "rotated copies per point")->capture_default_str();
  rev->add_option("--twist", twist_, "twist in radians per unit of the first fixed coordinate, halved")
      ->capture_default_str();
  rev->add_option("--fixed", fixed_, "fixed axes, all but the last when absent")->delimiter(',');
  rev->add_flag("--full-turn", full_turn_, "sweep 2 pi instead of pi");
  input(rev);
  cloud_format(rev);
  auto* comps = leaf(morse, "components", "connected components of each sample", [&] {
    json j = json::array();
    for (const auto& s : parse_samples(slurp(file_))) {
      const double r = radius_ ? *radius_ : default_link_radius(s.cloud);
      const std::size_t n = radius_ ? count_components(s.cloud, r) : count_components(s.cloud);
      j.push_back({{"t", s.t}, {"points", s.cloud.points.size()}, {"radius", r}, {"components", n}});
    }
    out_ << j.dump() << '\n';
  });
  comps->add_option("--radius", radius_, "link radius; twice the largest nearest-neighbour gap when absent");
  input(comps);
}

int Runner::run(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"Knot surgery groups and Morse level sets", "topsurg"};
  build(app);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out_, err);
  } catch (const CLI::Error& e) {
    err << "ERROR " << kInputError << ": " << e.get_name() << ": " << e.what() << '\n';
    return kInputError;
  }

  try {
    for (auto& [sub, body] : actions_)
      if (sub->parsed()) {
        body();
        return kOk;
      }
    throw Error(ErrorKind::Internal, "no subcommand resolved");
  } catch (const Inconclusive& e) {
    err << "ERROR " << kInconclusive << ": Inconclusive: " << e.what << '\n';
    return kInconclusive;
  } catch (const Error& e) {
    const int code = exit_code(e.kind());
    err << "ERROR " << code << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
    return code;
  } catch (const std::exception& e) {
    err << "ERROR " << kInternal << ": Internal: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Runner runner(in, out);
  return runner.run(args, err);
}

}  // namespace topsurg::cli
