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


#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "replab/replab.h"

TEST(CApi, WeingartenTable) {
    replab_wg_table *t = nullptr;
    ASSERT_EQ(replab_wg_table_create(2, 4, &t), REPLAB_OK);
    const unsigned id[2] = {0, 1}, swap[2] = {1, 0};
    double v = 0.0;
    ASSERT_EQ(replab_wg_value(t, id, 2, &v), REPLAB_OK);
    EXPECT_DOUBLE_EQ(v, 1.0 / 15.0);
    ASSERT_EQ(replab_wg_value(t, swap, 2, &v), REPLAB_OK);
    EXPECT_DOUBLE_EQ(v, -1.0 / 60.0);
    int holds = 0;
    ASSERT_EQ(replab_wg_check_absolute_sum(t, &holds), REPLAB_OK);
    EXPECT_EQ(holds, 1);
    char *js = nullptr;
    ASSERT_EQ(replab_wg_to_json(t, &js), REPLAB_OK);
    EXPECT_NE(std::string(js).find("1/15"), std::string::npos);
    replab_string_free(js);
    const unsigned bad[2] = {0, 0};
    EXPECT_EQ(replab_wg_value(t, bad, 2, &v), REPLAB_ERR_ARGUMENT);
    EXPECT_STRNE(replab_last_error(), "");
    replab_wg_table_destroy(t);
}

TEST(CApi, ErrorCodes) {
    replab_wg_table *t = nullptr;
    EXPECT_EQ(replab_wg_table_create(4, 2, &t), REPLAB_ERR_UNSUPPORTED);
    EXPECT_EQ(t, nullptr);
    EXPECT_EQ(replab_wg_table_create(2, 4, nullptr), REPLAB_ERR_ARGUMENT);
    EXPECT_STREQ(replab_status_name(REPLAB_ERR_RESOURCE), "resource");
}

TEST(CApi, MatricesAndSampling) {
    replab_rng *rng = nullptr;
    ASSERT_EQ(replab_rng_create(42, &rng), REPLAB_OK);
    replab_matrix *u = nullptr;
    ASSERT_EQ(replab_haar_sample(3, rng, &u), REPLAB_OK);
    size_t r = 0, c = 0;
    replab_matrix_shape(u, &r, &c);
    EXPECT_EQ(r, 3u);
    EXPECT_EQ(c, 3u);
    std::vector<double> data(18);
    ASSERT_EQ(replab_matrix_data(u, data.data(), data.size()), REPLAB_OK);
    double col0 = 0.0;
    for (size_t i = 0; i < 3; ++i) col0 += data[6 * i] * data[6 * i] + data[6 * i + 1] * data[6 * i + 1];
    EXPECT_NEAR(col0, 1.0, 1e-12);
    EXPECT_EQ(replab_matrix_data(u, data.data(), 4), REPLAB_ERR_ARGUMENT);
    replab_matrix_destroy(u);

    replab_matrix *cl = nullptr;
    ASSERT_EQ(replab_clifford_sample(2, rng, &cl), REPLAB_OK);
    replab_matrix_destroy(cl);
    replab_rng_destroy(rng);

    // E tr(A U B U^dag) = tr A tr B / d with A = B = I on C^2.
    const double eye[8] = {1, 0, 0, 0, 0, 0, 1, 0};
    replab_matrix *a = nullptr;
    ASSERT_EQ(replab_matrix_create(2, 2, eye, &a), REPLAB_OK);
    double re = 0, im = 0;
    ASSERT_EQ(replab_haar_expect_trace_power(a, a, 1, &re, &im), REPLAB_OK);
    EXPECT_NEAR(re, 2.0, 1e-12);
    EXPECT_NEAR(im, 0.0, 1e-12);
    replab_matrix_destroy(a);
}

TEST(CApi, TreeRoundTripAndBound) {
    const char *json =
        R"({"depth":1,"k":1,"d":4,"nonadaptive":true,"root":"r","nodes":[{"id":"r","outcomes":[)"
        R"({"weight":0.25,"psi":[[1,0],[0,0],[0,0],[0,0]],"child":null},)"
        R"({"weight":0.25,"psi":[[0,0],[1,0],[0,0],[0,0]],"child":null},)"
        R"({"weight":0.25,"psi":[[0,0],[0,0],[1,0],[0,0]],"child":null},)"
        R"({"weight":0.25,"psi":[[0,0],[0,0],[0,0],[1,0]],"child":null}]}]})";
    replab_tree *tree = nullptr;
    ASSERT_EQ(replab_tree_from_json(json, &tree), REPLAB_OK) << replab_last_error();
    unsigned depth = 0;
    replab_tree_depth(tree, &depth);
    EXPECT_EQ(depth, 1u);
    double bound = 0.0;
    ASSERT_EQ(replab_tree_tv_bound(tree, 0.3, &bound), REPLAB_OK);
    EXPECT_NEAR(bound, 2.0 * 0.09 / 5.0, 1e-12);
    EXPECT_EQ(replab_tree_tv_bound(tree, 0.5, &bound), REPLAB_ERR_ARGUMENT);
    char *out = nullptr;
    ASSERT_EQ(replab_tree_to_json(tree, &out), REPLAB_OK);
    replab_tree *again = nullptr;
    EXPECT_EQ(replab_tree_from_json(out, &again), REPLAB_OK);
    replab_string_free(out);
    replab_tree_destroy(again);
    replab_tree_destroy(tree);

    EXPECT_EQ(replab_tree_from_json(R"({"depth":1,"k":1,"d":2,"root":"r","nodes":[{"id":"r","outcomes":[{"weight":0.5,"psi":[[1,0],[0,0]],"child":null}]}]})",
                                    &tree),
              REPLAB_ERR_VALIDATION);
}

TEST(CApi, Experiments) {
    EXPECT_GE(replab_command_count(), 7u);
    EXPECT_EQ(replab_command_name(1000), nullptr);
    replab_report *rep = nullptr;
    ASSERT_EQ(replab_experiment_run(R"({"command":"wg","params":{"m":2,"d":4}})", &rep), REPLAB_OK);
    EXPECT_EQ(replab_report_exit_code(rep), 0);
    EXPECT_STREQ(replab_report_format(rep), "json");
    EXPECT_NE(std::strstr(replab_report_body(rep), "-1/60"), nullptr);
    replab_report_destroy(rep);
    ASSERT_EQ(replab_experiment_run(R"({"command":"wg","params":{"m":9}})", &rep), REPLAB_OK);
    EXPECT_EQ(replab_report_exit_code(rep), 2);
    EXPECT_STRNE(replab_report_error(rep), "");
    replab_report_destroy(rep);
}

TEST(CApi, MemoryBudget) {
    const uint64_t old = replab_memory_budget();
    ASSERT_EQ(replab_set_memory_budget(1024), REPLAB_OK);
    std::vector<double> zeros(2 * 64 * 64, 0.0);
    replab_matrix *m = nullptr;
    EXPECT_EQ(replab_matrix_create(64, 64, zeros.data(), &m), REPLAB_ERR_RESOURCE);
    EXPECT_EQ(m, nullptr);
    replab_report *rep = nullptr;
    ASSERT_EQ(replab_experiment_run(R"({"command":"design","params":{"n":3,"t":2,"samples":300,"pairs":300}})", &rep), REPLAB_OK);
    EXPECT_EQ(replab_report_exit_code(rep), 3);
    replab_report_destroy(rep);
    replab_set_memory_budget(old);
}
