#include "entangle/entangle.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "entangle/artifacts.hpp"
#include "entangle/error.hpp"

struct ent_pipeline {
  entangle::Pipeline p;
};

namespace {

thread_local std::string g_last_error;

ent_status status_of(entangle::ErrorKind k) {
  using entangle::ErrorKind;
  switch (k) {
    case ErrorKind::kInvalidArgument: return ENT_ERR_INVALID_ARGUMENT;
    case ErrorKind::kNotFound: return ENT_ERR_NOT_FOUND;
    case ErrorKind::kConstruction: return ENT_ERR_CONSTRUCTION;
    case ErrorKind::kDegenerate: return ENT_ERR_DEGENERATE;
    case ErrorKind::kIo: return ENT_ERR_IO;
    case ErrorKind::kInternal: return ENT_ERR_INTERNAL;
  }
  return ENT_ERR_INTERNAL;
}

template <class F>
ent_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return ENT_OK;
  } catch (const entangle::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  }
  return ENT_ERR_INTERNAL;
}

void require(const void* ptr, const char* what) {
  if (!ptr) entangle::fail(entangle::ErrorKind::kInvalidArgument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ent_complex_counts counts(const entangle::TwoComplex& c) {
  return {c.vertex_count(), c.edge_count(), c.face_count()};
}

}  // namespace

extern "C" {

const char* ent_version(void) { return "1.0.0"; }

const char* ent_status_name(ent_status s) {
  switch (s) {
    case ENT_OK: return "ok";
    case ENT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ENT_ERR_NOT_FOUND: return "not found";
    case ENT_ERR_CONSTRUCTION: return "construction error";
    case ENT_ERR_DEGENERATE: return "degenerate input";
    case ENT_ERR_IO: return "i/o error";
    case ENT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ent_last_error(void) { return g_last_error.c_str(); }

void ent_string_free(char* s) { delete[] s; }

ent_status ent_cuboid_counts(int64_t n1, int64_t n2, int64_t n3, ent_complex_counts* out) {
  return guard([&] {
    require(out, "out");
    *out = counts(entangle::build_cuboid(n1, n2, n3).complex());
  });
}

ent_status ent_generate(int64_t n, const char* dir, const char* formats) {
  return guard([&] {
    require(dir, "dir");
    entangle::write_generate(n, dir, entangle::Formats::parse(formats ? formats : "json"));
  });
}

ent_status ent_pipeline_build(int64_t n, uint64_t seed, ent_pipeline** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    *out = new ent_pipeline{entangle::build_pipeline(n, seed)};
  });
}

void ent_pipeline_free(ent_pipeline* p) { delete p; }

ent_status ent_pipeline_get_counts(const ent_pipeline* p, ent_pipeline_counts* out) {
  return guard([&] {
    require(p, "pipeline");
    require(out, "out");
    out->box = counts(p->p.box.complex());
    out->cprime = counts(p->p.cprime.complex);
    out->cdoubleprime = counts(p->p.cdoubleprime);
    out->tree_edges = p->p.cprime.tree_edges.size();
    out->non_tree_edges = p->p.cprime.complex.edge_count() - out->tree_edges;
  });
}

ent_status ent_pipeline_write(const ent_pipeline* p, const char* dir, const char* formats) {
  return guard([&] {
    require(p, "pipeline");
    require(dir, "dir");
    entangle::write_build(p->p, dir, entangle::Formats::parse(formats ? formats : "json"));
  });
}

void ent_verify_options_init(ent_verify_options* o) {
  if (!o) return;
  const entangle::VerifyOptions d;
  o->scope = nullptr;
  o->sample_seed = d.sample_seed;
  o->knot_samples = d.knot_samples;
  o->contraction_samples = d.contraction_samples;
  o->lemma_trials = d.lemma_trials;
  o->inject_negative = d.inject_negative ? 1 : 0;
  o->checks = nullptr;
  o->parallel = d.parallel ? 1 : 0;
}

ent_status ent_pipeline_verify(const ent_pipeline* p, const ent_verify_options* options, char** report_json,
                               int* passed) {
  return guard([&] {
    require(p, "pipeline");
    require(report_json, "report_json");
    require(passed, "passed");
    ent_verify_options o;
    ent_verify_options_init(&o);
    if (options) o = *options;
    entangle::VerifyOptions v;
    if (o.scope) v.scope = entangle::Scope::parse(o.scope, o.sample_seed);
    v.sample_seed = o.sample_seed;
    v.knot_samples = o.knot_samples;
    v.contraction_samples = o.contraction_samples;
    v.lemma_trials = o.lemma_trials;
    v.inject_negative = o.inject_negative != 0;
    v.parallel = o.parallel != 0;
    if (o.checks) {
      std::istringstream in(o.checks);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) v.checks.push_back(item);
    }
    const auto report = entangle::run_verification(p->p, v);
    *report_json = copy_out(entangle::dump(report.to_json(), 2));
    *passed = report.passed() ? 1 : 0;
  });
}

ent_status ent_pipeline_knot(const ent_pipeline* p, uint32_t edge, const uint32_t* primes, size_t prime_count,
                             char** certificate_json) {
  return guard([&] {
    require(p, "pipeline");
    require(certificate_json, "certificate_json");
    if (prime_count) require(primes, "primes");
    std::vector<std::uint32_t> ps(primes, primes + prime_count);
    *certificate_json = copy_out(entangle::dump(entangle::knot_report(p->p, edge, ps), 2));
  });
}

}  // extern "C"
