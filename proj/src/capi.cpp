// Copyright 2026 The replab Authors
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


#include "replab/replab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "replab/circuits.hpp"
#include "replab/error.hpp"
#include "replab/experiment.hpp"
#include "replab/tasks.hpp"
#include "replab/tree.hpp"
#include "replab/weingarten.hpp"

struct replab_wg_table {
    std::shared_ptr<const replab::WeingartenTable> table;
};
struct replab_rng {
    replab::Rng rng;
};
struct replab_matrix {
    replab::ComplexMatrix m;
};
struct replab_tree {
    replab::StrategyTree tree;
};
struct replab_report {
    replab::ExperimentOutput out;
};

namespace {

thread_local std::string last_error;

replab_status status_of(replab::ErrorKind kind) {
    switch (kind) {
        case replab::ErrorKind::Argument: return REPLAB_ERR_ARGUMENT;
        case replab::ErrorKind::Resource: return REPLAB_ERR_RESOURCE;
        case replab::ErrorKind::Unsupported: return REPLAB_ERR_UNSUPPORTED;
        case replab::ErrorKind::Validation: return REPLAB_ERR_VALIDATION;
        case replab::ErrorKind::Internal: return REPLAB_ERR_INTERNAL;
    }
    return REPLAB_ERR_INTERNAL;
}

template <class F>
replab_status guarded(F &&f) {
    try {
        last_error.clear();
        f();
        return REPLAB_OK;
    } catch (const replab::Error &e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return REPLAB_ERR_RESOURCE;
    } catch (const std::exception &e) {
        last_error = e.what();
        return REPLAB_ERR_INTERNAL;
    }
}

void require(bool cond, const char *msg) {
    if (!cond) throw replab::ArgumentError(msg);
}

char *dup_string(const std::string &s) {
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

const char *replab_version(void) { return replab::version_string(); }
const char *replab_last_error(void) { return last_error.c_str(); }

const char *replab_status_name(replab_status status) {
    switch (status) {
        case REPLAB_OK: return "ok";
        case REPLAB_ERR_ARGUMENT: return "argument";
        case REPLAB_ERR_RESOURCE: return "resource";
        case REPLAB_ERR_UNSUPPORTED: return "unsupported-regime";
        case REPLAB_ERR_VALIDATION: return "validation";
        case REPLAB_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void replab_string_free(char *s) { std::free(s); }

replab_status replab_set_memory_budget(uint64_t bytes) {
    return guarded([&] {
        require(bytes > 0, "memory budget must be positive");
        replab::set_memory_budget_bytes(static_cast<std::size_t>(bytes));
    });
}

uint64_t replab_memory_budget(void) { return replab::memory_budget_bytes(); }

replab_status replab_wg_table_create(unsigned m, unsigned d, replab_wg_table **out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = new replab_wg_table{replab::weingarten_table(m, d)};
    });
}

void replab_wg_table_destroy(replab_wg_table *table) { delete table; }

replab_status replab_wg_value(const replab_wg_table *table, const unsigned *images, unsigned degree, double *out) {
    return guarded([&] {
        require(table && images && out, "null argument");
        require(degree == table->table->m(), "permutation degree differs from the table's m");
        *out = table->table->value(replab::Permutation(std::vector<unsigned>(images, images + degree)));
    });
}

replab_status replab_wg_to_json(const replab_wg_table *table, char **out_json) {
    return guarded([&] {
        require(table && out_json, "null argument");
        nlohmann::ordered_json j;
        j["m"] = table->table->m();
        j["d"] = table->table->d();
        j["values"] = nlohmann::ordered_json::object();
        for (const auto &[key, q] : table->table->values()) j["values"][key] = replab::rational_string(q);
        *out_json = dup_string(j.dump());
    });
}

replab_status replab_wg_check_absolute_sum(const replab_wg_table *table, int *out_holds) {
    return guarded([&] {
        require(table && out_holds, "null argument");
        *out_holds = table->table->absolute_sum() == table->table->absolute_sum_closed_form() ? 1 : 0;
    });
}

replab_status replab_rng_create(uint64_t seed, replab_rng **out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        *out = new replab_rng{replab::Rng(seed)};
    });
}

void replab_rng_destroy(replab_rng *rng) { delete rng; }

replab_status replab_matrix_create(size_t rows, size_t cols, const double *re_im, replab_matrix **out) {
    return guarded([&] {
        require(out != nullptr, "null output pointer");
        require(rows > 0 && cols > 0, "matrix dimensions must be positive");
        replab::require_matrix_budget(rows, cols, "replab_matrix_create");
        auto *h = new replab_matrix{replab::ComplexMatrix::Zero(static_cast<replab::Index>(rows), static_cast<replab::Index>(cols))};
        if (re_im) {
            for (size_t r = 0; r < rows; ++r) {
                for (size_t c = 0; c < cols; ++c) {
                    const size_t at = 2 * (r * cols + c);
                    h->m(static_cast<replab::Index>(r), static_cast<replab::Index>(c)) = replab::Complex(re_im[at], re_im[at + 1]);
                }
            }
        }
        *out = h;
    });
}

void replab_matrix_destroy(replab_matrix *m) { delete m; }

replab_status replab_matrix_shape(const replab_matrix *m, size_t *rows, size_t *cols) {
    return guarded([&] {
        require(m && rows && cols, "null argument");
        *rows = static_cast<size_t>(m->m.rows());
        *cols = static_cast<size_t>(m->m.cols());
    });
}

replab_status replab_matrix_data(const replab_matrix *m, double *re_im, size_t len) {
    return guarded([&] {
        require(m && re_im, "null argument");
        const auto rows = static_cast<size_t>(m->m.rows()), cols = static_cast<size_t>(m->m.cols());
        require(len >= 2 * rows * cols, "buffer too small");
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < cols; ++c) {
                const auto z = m->m(static_cast<replab::Index>(r), static_cast<replab::Index>(c));
                re_im[2 * (r * cols + c)] = z.real();
                re_im[2 * (r * cols + c) + 1] = z.imag();
            }
        }
    });
}

replab_status replab_haar_sample(unsigned d, replab_rng *rng, replab_matrix **out) {
    return guarded([&] {
        require(rng && out, "null argument");
        require(d > 0, "dimension must be positive");
        *out = new replab_matrix{replab::haar_sample(d, rng->rng).matrix()};
    });
}

replab_status replab_clifford_sample(unsigned n_qubits, replab_rng *rng, replab_matrix **out) {
    return guarded([&] {
        require(rng && out, "null argument");
        *out = new replab_matrix{replab::sample_clifford(n_qubits, rng->rng).matrix()};
    });
}

replab_status replab_haar_expect_trace_power(const replab_matrix *a, const replab_matrix *b, unsigned m, double *out_re,
                                             double *out_im) {
    return guarded([&] {
        require(a && b && out_re && out_im, "null argument");
        const replab::Complex z = replab::haar_expect_trace_power(a->m, b->m, m);
        *out_re = z.real();
        *out_im = z.imag();
    });
}

replab_status replab_tree_from_json(const char *json, replab_tree **out) {
    return guarded([&] {
        require(json && out, "null argument");
        *out = new replab_tree{replab::tree_from_json(json)};
    });
}

void replab_tree_destroy(replab_tree *tree) { delete tree; }

replab_status replab_tree_to_json(const replab_tree *tree, char **out_json) {
    return guarded([&] {
        require(tree && out_json, "null argument");
        *out_json = dup_string(replab::tree_to_json(tree->tree));
    });
}

replab_status replab_tree_depth(const replab_tree *tree, unsigned *out) {
    return guarded([&] {
        require(tree && out, "null argument");
        *out = tree->tree.depth();
    });
}

replab_status replab_tree_tv_bound(const replab_tree *tree, double epsilon, double *out) {
    return guarded([&] {
        require(tree && out, "null argument");
        *out = replab::tv_bound_rhs(tree->tree, epsilon).value;
    });
}

size_t replab_command_count(void) { return replab::experiment_commands().size(); }

const char *replab_command_name(size_t index) {
    const auto &names = replab::experiment_commands();
    return index < names.size() ? names[index].c_str() : nullptr;
}

replab_status replab_experiment_run(const char *config_json, replab_report **out) {
    return guarded([&] {
        require(config_json && out, "null argument");
        *out = new replab_report{replab::run_experiment(config_json)};
    });
}

void replab_report_destroy(replab_report *report) { delete report; }
int replab_report_exit_code(const replab_report *report) { return report ? report->out.exit_code : -1; }
const char *replab_report_format(const replab_report *report) { return report ? report->out.format.c_str() : ""; }
const char *replab_report_body(const replab_report *report) { return report ? report->out.report.c_str() : ""; }
const char *replab_report_summary(const replab_report *report) { return report ? report->out.summary.c_str() : ""; }
const char *replab_report_meta(const replab_report *report) { return report ? report->out.meta.c_str() : ""; }
const char *replab_report_error(const replab_report *report) { return report ? report->out.error.c_str() : ""; }

}  // extern "C"
