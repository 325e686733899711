// Command-line front end over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "difftan/difftan.h"

namespace {

struct Common {
  std::string space;
  std::string point = "origin";
  unsigned order = 4;
  std::string slopes;
  std::string format = "text";
  std::string out;
  std::string vars = "u";
  std::string base, fibre, first, second;
};

int exit_code(difftan_status s) {
  switch (s) {
    case DIFFTAN_OK: return 0;
    case DIFFTAN_ERR_PARSE:
    case DIFFTAN_ERR_INVALID_PARAMETER:
    case DIFFTAN_ERR_POINT_NOT_IN_SPACE:
    case DIFFTAN_ERR_MALFORMED_CANDIDATE:
    case DIFFTAN_ERR_NULL_ARGUMENT: return 2;
    default: return 1;
  }
}

int report_error(difftan_status s) {
  std::cerr << "error: " << difftan_last_error_code() << ": " << difftan_last_error() << "\n";
  return exit_code(s);
}

int emit(const Common& c, char* text) {
  std::unique_ptr<char, decltype(&difftan_string_free)> owned(text, difftan_string_free);
  if (c.out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(c.out);
  if (!f) {
    std::cerr << "error: cannot write " << c.out << "\n";
    return 1;
  }
  f << text;
  return 0;
}

using SpacePtr = std::unique_ptr<difftan_space, decltype(&difftan_space_free)>;

int run(const std::string& verb, const Common& c) {
  difftan_options opts{};
  opts.order = c.order;
  opts.slopes = c.slopes.empty() ? nullptr : c.slopes.c_str();
  opts.format = c.format == "json" ? DIFFTAN_FORMAT_JSON : DIFFTAN_FORMAT_TEXT;
  char* text = nullptr;
  if (verb == "table") {
    int passed = 0;
    difftan_status s = difftan_table(&opts, &text, &passed);
    if (s != DIFFTAN_OK) return report_error(s);
    int rc = emit(c, text);
    return rc ? rc : (passed ? 0 : 1);
  }
  difftan_space* raw = nullptr;
  difftan_status s = difftan_space_parse(c.space.c_str(), &raw);
  if (s != DIFFTAN_OK) return report_error(s);
  SpacePtr space(raw, difftan_space_free);
  const char* vars = c.vars.c_str();
  if (verb == "tangent-internal") {
    s = difftan_report_internal(raw, c.point.c_str(), &opts, &text);
  } else if (verb == "tangent-external") {
    s = difftan_report_external(raw, c.point.c_str(), &opts, &text);
  } else if (verb == "beta") {
    s = difftan_report_beta(raw, c.point.c_str(), &opts, &text);
  } else if (verb == "bundle-check") {
    s = difftan_bundle_check(raw, vars, c.base.c_str(), c.fibre.c_str(), &opts, &text);
  } else if (verb == "fibrewise") {
    s = difftan_fibrewise(raw, vars, c.base.c_str(), c.first.c_str(), c.second.c_str(), &opts, &text);
  } else if (verb == "trivialize") {
    s = difftan_trivialize(raw, &opts, &text);
  } else {
    s = difftan_fine(raw, c.point.c_str(), &opts, &text);
  }
  if (s != DIFFTAN_OK) return report_error(s);
  return emit(c, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent spaces of finitely presented diffeological spaces"};
  app.require_subcommand(1);
  Common c;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", c.out, "write the report to FILE");
  };
  auto add_space = [&](CLI::App* sub, bool point) {
    sub->add_option("space", c.space, "space expression, e.g. wedge(2)")->required();
    if (point) sub->add_option("point", c.point, "point: origin, a number or a tuple");
  };
  auto add_tangent = [&](CLI::App* sub) {
    sub->add_option("--order", c.order, "truncation order K")->check(CLI::Range(2u, 12u));
    sub->add_option("--slopes", c.slopes, "comma-separated slopes for the wire family");
  };

  auto* internal = app.add_subcommand("tangent-internal", "internal tangent space at a point");
  auto* external = app.add_subcommand("tangent-external", "external tangent space at a point");
  auto* beta = app.add_subcommand("beta", "comparison map with the full report");
  for (auto* sub : {internal, external, beta}) {
    add_space(sub, true);
    add_tangent(sub);
    add_output(sub);
  }
  auto* bundle = app.add_subcommand("bundle-check", "Hector and dvs membership of a bundle candidate");
  add_space(bundle, false);
  bundle->add_option("--vars", c.vars, "source variables, comma-separated");
  bundle->add_option("--base", c.base, "base plot tuple")->required();
  bundle->add_option("--fibre", c.fibre, "fibre tuple")->required();
  add_output(bundle);
  auto* fibrewise = app.add_subcommand("fibrewise", "smoothness of fibrewise addition and scalar multiplication");
  add_space(fibrewise, false);
  fibrewise->add_option("--vars", c.vars, "source variables, comma-separated");
  fibrewise->add_option("--base", c.base, "common base plot tuple")->required();
  fibrewise->add_option("--first", c.first, "first fibre tuple")->required();
  fibrewise->add_option("--second", c.second, "second fibre tuple")->required();
  add_output(fibrewise);
  auto* table = app.add_subcommand("table", "recompute the summary table");
  table->add_option("--order", c.order, "truncation order K")->check(CLI::Range(2u, 12u));
  add_output(table);
  auto* trivialize = app.add_subcommand("trivialize", "check the tangent bundle trivialization of a group");
  add_space(trivialize, false);
  add_output(trivialize);
  auto* fine = app.add_subcommand("fine", "fineness of the tangent space");
  add_space(fine, true);
  add_output(fine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(app.get_subcommands().front()->get_name(), c);
}
