#include "difftan/difftan.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "difftan/dsl.hpp"
#include "difftan/report.hpp"

struct difftan_space {
  difftan::SpacePresentation value;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_code;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

difftan_status status_of(difftan::ErrorCode c) {
  using difftan::ErrorCode;
  switch (c) {
    case ErrorCode::ParseError: return DIFFTAN_ERR_PARSE;
    case ErrorCode::InvalidParameter:
    case ErrorCode::ShapeMismatch: return DIFFTAN_ERR_INVALID_PARAMETER;
    case ErrorCode::PointNotInSpace: return DIFFTAN_ERR_POINT_NOT_IN_SPACE;
    case ErrorCode::UndecidableWithoutCertificate: return DIFFTAN_ERR_UNDECIDABLE;
    case ErrorCode::MalformedCandidate: return DIFFTAN_ERR_MALFORMED_CANDIDATE;
    case ErrorCode::NotMembers:
    case ErrorCode::NotAMember: return DIFFTAN_ERR_NOT_MEMBERS;
    case ErrorCode::UnsupportedMap:
    case ErrorCode::UnsupportedGroup:
    case ErrorCode::UnsupportedFamily:
    case ErrorCode::OutsideGeneratingFamily: return DIFFTAN_ERR_UNSUPPORTED;
    case ErrorCode::DivisionByZero:
    case ErrorCode::MixedDiscriminants:
    case ErrorCode::NonzeroConstantTerm: return DIFFTAN_ERR_ARITHMETIC;
    case ErrorCode::SubNotContained:
    case ErrorCode::StabilizationFailure: return DIFFTAN_ERR_COMPUTATION;
    case ErrorCode::Internal: return DIFFTAN_ERR_INTERNAL;
  }
  return DIFFTAN_ERR_INTERNAL;
}

template <typename F>
difftan_status guard(F&& body) {
  g_error.clear();
  g_error_code.clear();
  try {
    body();
    return DIFFTAN_OK;
  } catch (const difftan::Error& e) {
    g_error = e.what();
    g_error_code = difftan::error_name(e.code());
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    g_error_code = "Internal";
    return DIFFTAN_ERR_INTERNAL;
  }
}

difftan_status null_argument() {
  g_error = "required argument is NULL";
  g_error_code = "NullArgument";
  return DIFFTAN_ERR_NULL_ARGUMENT;
}

difftan::TangentOptions tangent_options(const difftan_space* space, const difftan_options* opts) {
  difftan::TangentOptions o;
  if (opts && opts->order) o.order = opts->order;
  if (opts && opts->slopes) {
    o.slopes = difftan::parse_number_list(opts->slopes);
  } else if (!space->value.is_product()) {
    if (const auto* g = std::get_if<difftan::Generated>(&space->value.family()); g && g->k == 1 && g->n >= 2) {
      o.slopes = difftan::default_slopes(difftan::kWireSlopes);
    }
  }
  return o;
}

difftan::OutputFormat format_of(const difftan_options* opts) {
  return opts && opts->format == DIFFTAN_FORMAT_TEXT ? difftan::OutputFormat::Text : difftan::OutputFormat::Json;
}

difftan::BundlePlotCandidate candidate(const char* vars, const char* base, const char* fibre) {
  auto names = difftan::split_names(vars ? vars : "u");
  difftan::BundlePlotCandidate c;
  c.base = difftan::PolyPlot(names.size(), difftan::parse_polynomial_tuple(base, names));
  c.fibre = difftan::parse_polynomial_tuple(fibre, names);
  return c;
}

}  // namespace

extern "C" {

const char* difftan_last_error(void) { return g_error.c_str(); }
const char* difftan_last_error_code(void) { return g_error_code.c_str(); }

const char* difftan_status_name(difftan_status s) {
  switch (s) {
    case DIFFTAN_OK: return "ok";
    case DIFFTAN_ERR_PARSE: return "parse-error";
    case DIFFTAN_ERR_INVALID_PARAMETER: return "invalid-parameter";
    case DIFFTAN_ERR_POINT_NOT_IN_SPACE: return "point-not-in-space";
    case DIFFTAN_ERR_UNDECIDABLE: return "undecidable";
    case DIFFTAN_ERR_MALFORMED_CANDIDATE: return "malformed-candidate";
    case DIFFTAN_ERR_NOT_MEMBERS: return "not-members";
    case DIFFTAN_ERR_UNSUPPORTED: return "unsupported";
    case DIFFTAN_ERR_ARITHMETIC: return "arithmetic";
    case DIFFTAN_ERR_COMPUTATION: return "computation";
    case DIFFTAN_ERR_NULL_ARGUMENT: return "null-argument";
    case DIFFTAN_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void difftan_string_free(char* s) { std::free(s); }

difftan_status difftan_space_parse(const char* text, difftan_space** out) {
  if (!text || !out) return null_argument();
  *out = nullptr;
  return guard([&] { *out = new difftan_space{difftan::parse_space(text)}; });
}

void difftan_space_free(difftan_space* space) { delete space; }

difftan_status difftan_space_render(const difftan_space* space, char** out) {
  if (!space || !out) return null_argument();
  return guard([&] { *out = dup(space->value.render()); });
}

difftan_status difftan_space_contains(const difftan_space* space, const char* point, int* out) {
  if (!space || !point || !out) return null_argument();
  return guard([&] {
    *out = 0;
    try {
      difftan::parse_point(point, space->value);
      *out = 1;
    } catch (const difftan::Error& e) {
      if (e.code() != difftan::ErrorCode::PointNotInSpace) throw;
    }
  });
}

difftan_status difftan_report_internal(const difftan_space* space, const char* point, const difftan_options* opts,
                                       char** out) {
  if (!space || !point || !out) return null_argument();
  return guard([&] {
    auto x = difftan::parse_point(point, space->value);
    *out = dup(difftan::internal_report(space->value, x, tangent_options(space, opts), format_of(opts)));
  });
}

difftan_status difftan_report_external(const difftan_space* space, const char* point, const difftan_options* opts,
                                       char** out) {
  if (!space || !point || !out) return null_argument();
  return guard([&] {
    auto x = difftan::parse_point(point, space->value);
    *out = dup(difftan::external_report(space->value, x, tangent_options(space, opts).order, format_of(opts)));
  });
}

difftan_status difftan_report_beta(const difftan_space* space, const char* point, const difftan_options* opts,
                                   char** out) {
  if (!space || !point || !out) return null_argument();
  return guard([&] {
    auto x = difftan::parse_point(point, space->value);
    *out = dup(difftan::full_report(space->value, x, tangent_options(space, opts), format_of(opts)));
  });
}

difftan_status difftan_bundle_check(const difftan_space* space, const char* vars, const char* base,
                                    const char* fibre, const difftan_options* opts, char** out) {
  if (!space || !base || !fibre || !out) return null_argument();
  return guard([&] {
    auto c = candidate(vars, base, fibre);
    *out = dup(difftan::bundle_report(space->value, c, format_of(opts)));
  });
}

difftan_status difftan_fibrewise(const difftan_space* space, const char* vars, const char* base, const char* first,
                                 const char* second, const difftan_options* opts, char** out) {
  if (!space || !base || !first || !second || !out) return null_argument();
  return guard([&] {
    auto a = candidate(vars, base, first);
    auto b = candidate(vars, base, second);
    *out = dup(difftan::fibrewise_report(space->value, a, b, format_of(opts)));
  });
}

difftan_status difftan_trivialize(const difftan_space* space, const difftan_options* opts, char** out) {
  if (!space || !out) return null_argument();
  return guard([&] { *out = dup(difftan::trivialization_report(space->value, format_of(opts))); });
}

difftan_status difftan_fine(const difftan_space* space, const char* point, const difftan_options* opts, char** out) {
  if (!space || !point || !out) return null_argument();
  return guard([&] {
    auto x = difftan::parse_point(point, space->value);
    *out = dup(difftan::fine_report(space->value, x, format_of(opts)));
  });
}

difftan_status difftan_table(const difftan_options* opts, char** out, int* all_passed) {
  if (!out) return null_argument();
  return guard([&] {
    auto t = difftan::run_table(opts && opts->order ? opts->order : 4);
    if (all_passed) *all_passed = t.all_passed() ? 1 : 0;
    *out = dup(difftan::table_report(t, format_of(opts)));
  });
}

}  // extern "C"
