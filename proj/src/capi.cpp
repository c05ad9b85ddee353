#include "unitrace.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <iterator>
#include <memory>
#include <optional>
#include <new>
#include <string>
#include <vector>

#include "counting.hpp"
#include "error.hpp"
#include "product.hpp"
#include "rm.hpp"
#include "shuffle.hpp"
#include "stats.hpp"
#include "sync.hpp"
#include "walk.hpp"

using namespace utr;

extern "C" {

struct utr_system {
    ModuleSystem rep;
};
struct utr_automaton {
    Automaton rep;
};

struct utr_sampler {
    std::vector<Automaton> automata;  // keeps Letter storage alive for drawn traces
    std::unique_ptr<ShuffleSampler> shuffle;
    std::unique_ptr<SyncSampler> sync;
    unsigned length = 0;
    Rng rng{0};
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

utr_status set_error(utr_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

utr_status from_exception() {
    try {
        throw;
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::io: return set_error(UTR_ERR_IO, e.what());
            case ErrorCode::parse: return set_error(UTR_ERR_PARSE, e.what());
            case ErrorCode::domain: return set_error(UTR_ERR_DOMAIN, e.what());
            case ErrorCode::internal: return set_error(UTR_ERR_INTERNAL, e.what());
        }
        return set_error(UTR_ERR_INTERNAL, e.what());
    } catch (const std::bad_alloc&) {
        return set_error(UTR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return set_error(UTR_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(UTR_ERR_INTERNAL, "unknown error");
    }
}

template <typename F>
utr_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return UTR_OK;
    } catch (...) {
        return from_exception();
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void copy_warning(char* dst, std::size_t cap, const std::string& src) {
    std::size_t n = std::min(cap - 1, src.size());
    std::memcpy(dst, src.data(), n);
    dst[n] = '\0';
}

utr_status arg_error(const char* what) {
    return set_error(UTR_ERR_ARG, std::string("invalid argument: ") + what);
}

std::vector<Automaton> flatten_all(const ModuleSystem& sys, const char* sync_label) {
    std::optional<std::string> label;
    if (sync_label) label = sync_label;
    std::vector<Automaton> out;
    out.reserve(sys.modules.size());
    for (std::size_t i = 0; i < sys.modules.size(); ++i)
        out.push_back(flatten_module(sys, i, nullptr, label));
    return out;
}

// Sampling and counting an unsynchronized system is only sound when the model
// really is unsynchronized.
void require_no_sync_labels(const ModuleSystem& sys) {
    if (!sys.sync_labels.empty()) {
        std::string labels;
        for (const std::string& l : sys.sync_labels) {
            if (!labels.empty()) labels += ", ";
            labels += l;
        }
        throw DomainError("system declares sync labels {" + labels +
                          "}; pass the one to synchronize on");
    }
}

}  // namespace

extern "C" {

const char* utr_version(void) { return "0.1.0"; }

const char* utr_last_error(void) { return g_last_error.c_str(); }

void utr_string_free(char* s) { std::free(s); }

void utr_string_array_free(char** v, size_t n) {
    if (!v) return;
    for (size_t i = 0; i < n; ++i) std::free(v[i]);
    std::free(v);
}

/* ---------- systems ---------- */

utr_status utr_system_parse(const char* source, utr_system** out) {
    if (!source || !out) return arg_error("utr_system_parse");
    return guarded([&] {
        auto sys = std::make_unique<utr_system>();
        sys->rep = parse_system(source);
        *out = sys.release();
    });
}

void utr_system_free(utr_system* sys) { delete sys; }

utr_status utr_system_print(const utr_system* sys, char** out) {
    if (!sys || !out) return arg_error("utr_system_print");
    return guarded([&] { *out = dup_string(print_system(sys->rep)); });
}

size_t utr_system_module_count(const utr_system* sys) {
    return sys ? sys->rep.modules.size() : 0;
}

const char* utr_system_module_name(const utr_system* sys, size_t module) {
    if (!sys || module >= sys->rep.modules.size()) return nullptr;
    return sys->rep.modules[module].name.c_str();
}

size_t utr_system_sync_label_count(const utr_system* sys) {
    return sys ? sys->rep.sync_labels.size() : 0;
}

const char* utr_system_sync_label(const utr_system* sys, size_t index) {
    if (!sys || index >= sys->rep.sync_labels.size()) return nullptr;
    auto it = sys->rep.sync_labels.begin();
    std::advance(it, index);
    return it->c_str();
}

utr_status utr_system_flatten(const utr_system* sys, size_t module, const char* sync_label,
                              utr_automaton** out) {
    if (!sys || !out) return arg_error("utr_system_flatten");
    return guarded([&] {
        std::optional<std::string> label;
        if (sync_label) label = sync_label;
        auto a = std::make_unique<utr_automaton>();
        a->rep = flatten_module(sys->rep, module, nullptr, label);
        *out = a.release();
    });
}

/* ---------- automata ---------- */

void utr_automaton_free(utr_automaton* a) { delete a; }

utr_status utr_automaton_parse(const char* text, utr_automaton** out) {
    if (!text || !out) return arg_error("utr_automaton_parse");
    return guarded([&] {
        auto a = std::make_unique<utr_automaton>();
        a->rep = parse_automaton(text);
        *out = a.release();
    });
}

utr_status utr_automaton_print(const utr_automaton* a, char** out) {
    if (!a || !out) return arg_error("utr_automaton_print");
    return guarded([&] { *out = dup_string(print_automaton(a->rep)); });
}

size_t utr_automaton_state_count(const utr_automaton* a) {
    return a ? a->rep.state_count() : 0;
}

size_t utr_automaton_transition_count(const utr_automaton* a) {
    return a ? a->rep.transition_count() : 0;
}

utr_status utr_automaton_validate(const utr_automaton* a, char** report) {
    if (!a || !report) return arg_error("utr_automaton_validate");
    return guarded([&] {
        std::string text;
        for (const Violation& v : validate_automaton(a->rep)) {
            text += v.message;
            text += '\n';
        }
        *report = dup_string(text);
    });
}

utr_status utr_automaton_growth(const utr_automaton* a, utr_growth* out) {
    if (!a || !out) return arg_error("utr_automaton_growth");
    return guarded([&] {
        GrowthDiagnostics d = check_growth_conditions(a->rep);
        out->strongly_connected = d.strongly_connected;
        out->aperiodic = d.aperiodic;
        out->unique_dominant_scc = d.unique_dominant_scc;
        out->certified = d.certified();
        copy_warning(out->warning, sizeof out->warning, d.warning);
    });
}

utr_status utr_automaton_count(const utr_automaton* a, unsigned n, char** decimal) {
    if (!a || !decimal) return arg_error("utr_automaton_count");
    return guarded([&] {
        CountTable t = build_count_table(a->rep, n);
        *decimal = dup_string(t.count(n).get_str());
    });
}

utr_status utr_automaton_asymptotics(const utr_automaton* a, unsigned length,
                                     utr_asymptotics* out) {
    if (!a || !out) return arg_error("utr_automaton_asymptotics");
    return guarded([&] {
        AsymptoticParams p = estimate_asymptotics(a->rep, default_ladder(length));
        out->omega = static_cast<double>(p.omega);
        out->c_const = static_cast<double>(p.c_const);
        out->fit_horizon = p.fit_horizon;
        out->relative_residual = static_cast<double>(p.relative_residual);
        out->certified = p.certified;
        copy_warning(out->warning, sizeof out->warning, p.warning);
    });
}

/* ---------- products ---------- */

utr_status utr_product_shuffle(const utr_automaton* const* factors, size_t count,
                               utr_automaton** out) {
    if (!factors || count == 0 || !out) return arg_error("utr_product_shuffle");
    return guarded([&] {
        std::vector<const Automaton*> fs;
        fs.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (!factors[i]) throw DomainError("null factor");
            fs.push_back(&factors[i]->rep);
        }
        auto a = std::make_unique<utr_automaton>();
        a->rep = std::move(build_shuffle_automaton(fs).base);
        *out = a.release();
    });
}

utr_status utr_product_sync(const utr_automaton* const* factors, size_t count,
                            const char* alpha_id, utr_automaton** out) {
    if (!factors || count == 0 || !alpha_id || !out) return arg_error("utr_product_sync");
    return guarded([&] {
        std::vector<const Automaton*> fs;
        fs.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            if (!factors[i]) throw DomainError("null factor");
            fs.push_back(&factors[i]->rep);
        }
        auto a = std::make_unique<utr_automaton>();
        a->rep = std::move(build_sync_product(fs, sync_letter(alpha_id)).base);
        *out = a.release();
    });
}

utr_status utr_automaton_enumerate(const utr_automaton* a, unsigned n, size_t limit,
                                   char*** words, size_t* count) {
    if (!a || !words || !count) return arg_error("utr_automaton_enumerate");
    return guarded([&] {
        std::vector<TraceWord> traces = enumerate_traces(a->rep, n, limit);
        char** arr = static_cast<char**>(std::calloc(traces.size() + 1, sizeof(char*)));
        if (!arr) throw std::bad_alloc();
        for (std::size_t i = 0; i < traces.size(); ++i) {
            std::string word;
            for (std::size_t j = 0; j < traces[i].letters.size(); ++j) {
                if (j > 0) word += ' ';
                word += traces[i].letters[j]->id;
            }
            arr[i] = dup_string(word);
        }
        *words = arr;
        *count = traces.size();
    });
}

/* ---------- sampling ---------- */

utr_status utr_system_count(const utr_system* sys, unsigned n, const char* sync_label,
                            char** decimal) {
    if (!sys || !decimal) return arg_error("utr_system_count");
    return guarded([&] {
        if (sync_label) {
            SyncSampler sampler(flatten_all(sys->rep, sync_label), sync_letter(sync_label), n,
                                SampleMode::exact);
            *decimal = dup_string(sampler.total_count().get_str());
        } else {
            require_no_sync_labels(sys->rep);
            ShuffleSampler sampler(flatten_all(sys->rep, nullptr), n, SampleMode::exact);
            *decimal = dup_string(sampler.total_count(n).get_str());
        }
    });
}

utr_status utr_sampler_new(const utr_system* sys, unsigned length, utr_mode mode,
                           const char* sync_label, uint64_t seed, utr_sampler** out) {
    if (!sys || !out) return arg_error("utr_sampler_new");
    if (mode != UTR_MODE_AUTO && mode != UTR_MODE_EXACT && mode != UTR_MODE_ASYMPTOTIC)
        return arg_error("utr_sampler_new mode");
    return guarded([&] {
        SampleMode m = mode == UTR_MODE_EXACT
                           ? SampleMode::exact
                           : (mode == UTR_MODE_ASYMPTOTIC ? SampleMode::asymptotic
                                                          : SampleMode::automatic);
        auto s = std::make_unique<utr_sampler>();
        s->length = length;
        s->rng = Rng(seed);
        if (sync_label) {
            s->sync = std::make_unique<SyncSampler>(flatten_all(sys->rep, sync_label),
                                                    sync_letter(sync_label), length, m);
        } else {
            require_no_sync_labels(sys->rep);
            s->shuffle =
                std::make_unique<ShuffleSampler>(flatten_all(sys->rep, nullptr), length, m);
        }
        *out = s.release();
    });
}

void utr_sampler_free(utr_sampler* s) { delete s; }

const char* utr_sampler_mode(const utr_sampler* s) {
    if (!s) return nullptr;
    return mode_name(s->sync ? s->sync->mode() : s->shuffle->mode());
}

const char* utr_sampler_warning(const utr_sampler* s) {
    if (!s) return nullptr;
    return s->sync ? s->sync->warning().c_str() : s->shuffle->warning().c_str();
}

utr_status utr_sampler_draw(utr_sampler* s, char** trace) {
    if (!s || !trace) return arg_error("utr_sampler_draw");
    return guarded([&] {
        TraceWord w = s->sync ? s->sync->sample_trace(s->rng)
                              : s->shuffle->sample_trace(s->length, s->rng);
        *trace = dup_string(trace_to_string(w));
    });
}

/* ---------- estimation ---------- */

utr_status utr_estimate(const utr_system* sys, unsigned depth, const char* detect_expr,
                        double epsilon, double delta, uint64_t seed,
                        utr_estimate_result* out) {
    if (!sys || !detect_expr || !out) return arg_error("utr_estimate");
    return guarded([&] {
        Verdict v = state_predicate_verdict(sys->rep, detect_expr);
        EstimationParams params{epsilon, delta, depth};
        Rng rng(seed);
        GaaResult r = gaa_estimate(sys->rep, v, params, rng);
        out->n_samples = r.n_samples;
        out->detections = r.detections;
        out->estimate = r.estimate;
    });
}

/* ---------- statistics ---------- */

utr_status utr_chi_square_uniform(const uint64_t* counts, size_t cells, double* statistic,
                                  double* p_value) {
    if (!counts || cells == 0 || !statistic || !p_value)
        return arg_error("utr_chi_square_uniform");
    return guarded([&] {
        Histogram h;
        std::vector<std::string> support(cells);
        for (size_t i = 0; i < cells; ++i) {
            support[i] = std::to_string(i);
            if (counts[i] > 0) h.counts[support[i]] = counts[i];
            h.total += counts[i];
        }
        ChiSquareResult r = chi_square_uniform(h, support);
        *statistic = r.statistic;
        *p_value = r.p_value;
    });
}

utr_status utr_tv_uniform(const uint64_t* counts, size_t cells, double* tv) {
    if (!counts || cells == 0 || !tv) return arg_error("utr_tv_uniform");
    return guarded([&] {
        Histogram h;
        std::vector<std::string> support(cells);
        for (size_t i = 0; i < cells; ++i) {
            support[i] = std::to_string(i);
            if (counts[i] > 0) h.counts[support[i]] = counts[i];
            h.total += counts[i];
        }
        *tv = tv_distance(h, support);
    });
}

}  // extern "C"
