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


#include "replab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <new>
#include <set>
#include <sstream>

#include <json.hpp>

#include "replab/circuits.hpp"
#include "replab/design.hpp"
#include "replab/error.hpp"
#include "replab/parallel.hpp"
#include "replab/permutation.hpp"
#include "replab/tasks.hpp"
#include "replab/weingarten.hpp"

namespace replab {

namespace {

using Json = nlohmann::ordered_json;

std::string num(double x) {
    if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Reads command parameters with defaults and ranges, remembering the resolved
// values, and rejects keys nobody asked for.
class Params {
   public:
    Params(const Json &raw, std::string command) : raw_(raw), command_(std::move(command)) {
        if (!raw_.is_object()) throw ArgumentError("params must be a JSON object");
    }

    long long integer(const std::string &name, long long def, long long lo, long long hi) {
        long long v = def;
        if (auto it = raw_.find(name); it != raw_.end()) {
            if (!it->is_number_integer()) throw ArgumentError(where(name) + " must be an integer");
            v = it->get<long long>();
        }
        if (v < lo || v > hi) {
            throw ArgumentError(where(name) + " = " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
        }
        used_.insert(name);
        resolved_[name] = v;
        return v;
    }

    double real(const std::string &name, double def, double lo, double hi, bool open_lo = false) {
        double v = def;
        if (auto it = raw_.find(name); it != raw_.end()) {
            if (!it->is_number()) throw ArgumentError(where(name) + " must be a number");
            v = it->get<double>();
        }
        if (!std::isfinite(v) || v > hi || v < lo || (open_lo && v == lo)) {
            throw ArgumentError(where(name) + " = " + num(v) + " outside " + (open_lo ? "(" : "[") + num(lo) + ", " +
                                num(hi) + "]");
        }
        used_.insert(name);
        resolved_[name] = v;
        return v;
    }

    std::string choice(const std::string &name, const std::string &def, const std::vector<std::string> &allowed) {
        std::string v = def;
        if (auto it = raw_.find(name); it != raw_.end()) {
            if (!it->is_string()) throw ArgumentError(where(name) + " must be a string");
            v = it->get<std::string>();
        }
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string list;
            for (const auto &a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw ArgumentError(where(name) + " = '" + v + "' is not one of {" + list + "}");
        }
        used_.insert(name);
        resolved_[name] = v;
        return v;
    }

    void finish() const {
        for (auto it = raw_.begin(); it != raw_.end(); ++it) {
            if (!used_.count(it.key())) throw ArgumentError("unknown parameter '" + it.key() + "' for command " + command_);
        }
    }

    const Json &resolved() const { return resolved_; }

   private:
    std::string where(const std::string &name) const { return command_ + ": parameter '" + name + "'"; }
    const Json &raw_;
    std::string command_;
    std::set<std::string> used_;
    Json resolved_ = Json::object();
};

struct Outcome {
    Json results = Json::object();
    std::string csv_header;
    std::vector<std::string> csv_rows;
    std::vector<std::string> summary;
    bool invariants_hold = true;
    std::string violation;

    void fail(const std::string &what) {
        if (invariants_hold) violation = what;
        invariants_hold = false;
    }
};

std::string join_row(std::initializer_list<std::string> cells) {
    std::string out;
    for (const auto &c : cells) out += (out.empty() ? "" : ",") + c;
    return out;
}

// ---------------------------------------------------------------------------

using Command = std::function<void(Params &, std::uint64_t, Outcome &)>;

void cmd_wg(Params &p, std::uint64_t, Outcome &out) {
    const auto m = static_cast<unsigned>(p.integer("m", 2, 1, kMaxWeingartenDegree));
    const auto d = static_cast<unsigned>(p.integer("d", 4, 1, 4096));
    p.finish();
    const auto table = weingarten_table(m, d);
    Json values = Json::object();
    out.csv_header = "cycle_type,value";
    for (const auto &[key, q] : table->values()) {
        values[key] = rational_string(q);
        out.csv_rows.push_back(join_row({key, rational_string(q)}));
    }
    const mpq_class abs_sum = table->absolute_sum();
    const mpq_class closed = table->absolute_sum_closed_form();
    const bool holds = abs_sum == closed;
    out.results["m"] = m;
    out.results["d"] = d;
    out.results["values"] = values;
    out.results["absolute_sum"] = rational_string(abs_sum);
    out.results["absolute_sum_closed_form"] = rational_string(closed);
    out.results["identity_holds"] = holds;
    out.summary.push_back("Weingarten table m=" + std::to_string(m) + " d=" + std::to_string(d));
    for (const auto &[key, q] : table->values()) out.summary.push_back("  Wg[" + key + "] = " + rational_string(q));
    out.summary.push_back("  sum |Wg| = " + rational_string(abs_sum) + " (closed form " + rational_string(closed) + ", " +
                          (holds ? "exact match" : "MISMATCH") + ")");
    if (!holds) out.fail("Weingarten absolute-sum identity");
}

void cmd_facts(Params &p, std::uint64_t, Outcome &out) {
    const auto m = static_cast<unsigned>(p.integer("m", 4, 1, kMaxEnumerationDegree));
    const auto d = static_cast<unsigned>(p.integer("d", 4, 1, 64));
    p.finish();
    out.csv_header = "quantity,brute_force,closed_form,status";
    auto report = [&](const std::string &name, const mpz_class &brute, const mpz_class &closed) {
        const bool ok = brute == closed;
        const std::string status = ok ? "exact match" : "mismatch";
        out.results[name] = {{"brute_force", brute.get_str()}, {"closed_form", closed.get_str()}, {"status", status}};
        out.csv_rows.push_back(join_row({name, brute.get_str(), closed.get_str(), status}));
        out.summary.push_back("  " + name + ": " + brute.get_str() + " (closed form " + closed.get_str() + ", " + status + ")");
        if (!ok) out.fail(name + " enumeration disagrees with its closed form");
    };
    out.results["m"] = m;
    out.results["d"] = d;
    out.summary.push_back("Permutation sums m=" + std::to_string(m) + " d=" + std::to_string(d));
    report("sum_d_power_cycles", sum_d_power_cycles_brute_force(m, d), sum_d_power_cycles_closed_form(m, d));
    report("sum_d_power_even_cycles", sum_d_power_even_cycles_brute_force(m, d), sum_d_power_even_cycles_closed_form(m, d));
}

CircuitEnsemble ensemble_from(const std::string &kind, unsigned n, unsigned depth, const std::string &v) {
    if (kind == "haar") return CircuitEnsemble::haar(n);
    if (kind == "clifford") return CircuitEnsemble::uniform_clifford(n);
    if (kind == "identity") return CircuitEnsemble::identity(Index{1} << n);
    Json j = {{"kind", "interleaved"}, {"n", n}, {"depth", depth}, {"v", v}};
    return CircuitEnsemble::from_json(j.dump());
}

void cmd_design(Params &p, std::uint64_t seed, Outcome &out) {
    const std::string kind = p.choice("ensemble", "clifford", {"clifford", "interleaved", "haar", "identity"});
    const auto n = static_cast<unsigned>(p.integer("n", 2, 1, kind == "haar" ? kMaxDenseQubits : kMaxCliffordQubits));
    const auto depth = static_cast<unsigned>(p.integer("depth", 4, 1, 256));
    const std::string v = p.choice("v", "T", {"T", "H", "I"});
    const auto t = static_cast<unsigned>(p.integer("t", 2, 1, 4));
    const auto samples = static_cast<std::size_t>(p.integer("samples", 10000, 3 * kJackknifeBlock, 100000000));
    const auto pairs = static_cast<std::size_t>(p.integer("pairs", 10000, 2, 100000000));
    p.choice("probes", "default", {"default"});
    p.finish();

    const CircuitEnsemble ens = ensemble_from(kind, n, depth, v);
    const Rng master(seed);
    Rng probe_rng = master.stream(0), sample_rng = master.stream(1), pair_rng = master.stream(2);
    const auto probes = default_probes(ens.dim(), t, probe_rng);
    MomentReport rep = design_distance(ens, t, probes, samples, sample_rng);
    const Estimate fp = frame_potential(ens, t, pairs, pair_rng);
    rep.frame_potential = fp.mean;
    rep.frame_potential_se = fp.se;
    rep.haar_frame_potential = haar_frame_potential(ens.dim(), t);

    Json probe_rows = Json::array();
    out.csv_header = "probe,distance_sq,distance_sq_se";
    for (const auto &pd : rep.probes) {
        probe_rows.push_back({{"label", pd.label}, {"distance_sq", pd.distance_sq}, {"distance_sq_se", pd.distance_sq_se}});
        out.csv_rows.push_back(join_row({pd.label, num(pd.distance_sq), num(pd.distance_sq_se)}));
    }
    out.results["ensemble"] = Json::parse(ens.to_json());
    out.results["t"] = t;
    out.results["n_samples"] = samples;
    out.results["probes"] = probe_rows;
    out.results["worst_probe"] = rep.worst_probe;
    out.results["distance_hs"] = rep.distance_hs;
    out.results["distance_se"] = rep.distance_se;
    out.results["frame_potential"] = {{"mean", fp.mean}, {"se", fp.se}, {"pairs", pairs}, {"haar", rep.haar_frame_potential}};
    out.summary.push_back("Design test: " + ens.name() + ", t=" + std::to_string(t) + ", " + std::to_string(samples) + " samples");
    out.summary.push_back("  HS distance to Haar twirl: " + num(rep.distance_hs) + " +/- " + num(rep.distance_se) +
                          " (worst probe " + rep.worst_probe + ")");
    out.summary.push_back("  frame potential: " + num(fp.mean) + " +/- " + num(fp.se) + " (Haar " +
                          num(rep.haar_frame_potential) + ")");
}

Strategy make_strategy(const std::string &name, const TaskInstance &task, std::size_t reference, std::size_t random_bases,
                       Rng &rng) {
    if (name == "standard-basis") return standard_basis_strategy(task.d, task.k, task.rounds);
    if (name == "haar-basis") return haar_basis_strategy(task.d, task.k, task.rounds, rng);
    std::vector<UnitaryMatrix> ref;
    for (std::size_t i = 0; i < reference; ++i) ref.push_back(task.ensemble.sample(rng));
    if (name == "greedy-adaptive") {
        return greedy_adaptive_strategy(task.d, task.k, task.rounds, task.epsilon, std::move(ref), random_bases, rng);
    }
    return helstrom_batch_strategy(task.d, task.k, task.rounds, task.epsilon, ref);
}

void cmd_sim(Params &p, std::uint64_t seed, Outcome &out, bool rqc) {
    const auto n = static_cast<unsigned>(p.integer("n", 3, 1, rqc ? kMaxCliffordQubits : kMaxDenseQubits));
    const auto k = static_cast<unsigned>(p.integer("k", 1, 1, kMaxPhiReplicas));
    const double eps = p.real("eps", rqc ? 1.0 / (3.0 * k) : 1.0 / 3.0, 0.0, 1.0, true);
    const auto rounds = static_cast<unsigned>(p.integer("N", 5, 1, 8));
    const auto trials = static_cast<std::size_t>(p.integer("trials", 2000, 1, 10000000));
    const std::string which =
        p.choice("strategy", "standard-basis", {"standard-basis", "haar-basis", "greedy-adaptive", "helstrom-batch", "all"});
    const auto depth = rqc ? static_cast<unsigned>(p.integer("depth", 8, 1, 256)) : 0u;
    const auto reference = static_cast<std::size_t>(p.integer("reference", 64, 1, 4096));
    const auto random_bases = static_cast<std::size_t>(p.integer("random_bases", 3, 0, 64));
    p.finish();
    if (checked_pow(std::size_t{1} << n, k, "simulation") > 256) throw ArgumentError("simulation: d^k must not exceed 256");

    const TaskInstance base = rqc ? TaskInstance::rqc(n, k, eps, rounds, CircuitEnsemble::interleaved(n, depth, default_v_gate(), "T"), seed)
                                  : TaskInstance::mixedness(n, k, eps, rounds, seed);
    std::vector<std::string> names;
    if (which == "all") {
        names = {"standard-basis", "haar-basis", "greedy-adaptive", "helstrom-batch"};
    } else {
        names = {which};
    }

    const Rng master(seed);
    out.results["task"] = Json::parse(base.to_json());
    out.csv_header = "N,success_rate,wilson_lo,wilson_hi,strategy,advantage,tv_bound";
    Json strategies = Json::array();
    out.summary.push_back(std::string(rqc ? "RQC" : "Mixedness") + " testing: d=" + std::to_string(base.d) +
                          ", k=" + std::to_string(k) + ", eps=" + num(eps) + ", " + std::to_string(trials) + " trials");
    for (std::size_t si = 0; si < names.size(); ++si) {
        Rng build_rng = master.stream(100 + si);
        const Strategy strat = make_strategy(names[si], base, reference, random_bases, build_rng);
        // Bracket of the TV bound evaluated with exact Haar moments.
        Json bracket = nullptr;
        std::string bound_note;
        try {
            bracket = tv_bound_rhs(strat.candidate_vectors, base.d, k, 1, eps).max_bracket;
        } catch (const ArgumentError &e) {
            bound_note = e.what();
        } catch (const UnsupportedRegimeError &e) {
            bound_note = e.what();
        }
        Json rows = Json::array();
        for (unsigned rr = 1; rr <= rounds; ++rr) {
            TaskInstance task = base;
            task.rounds = rr;
            Rng run_rng = master.stream(1000 * (si + 1) + rr);
            const SuccessReport rep = run_strategy(task, strat, trials, run_rng, reference);
            Json bound = nullptr;
            std::string bound_cell;
            if (!bracket.is_null()) {
                const double b = 2.0 * rr * bracket.get<double>();
                bound = b;
                bound_cell = num(b);
            }
            rows.push_back({{"N", rr},
                            {"successes", rep.successes},
                            {"success_rate", rep.success_rate},
                            {"wilson_lo", rep.wilson_lo},
                            {"wilson_hi", rep.wilson_hi},
                            {"advantage", rep.advantage},
                            {"tv_bound", bound}});
            out.csv_rows.push_back(join_row({std::to_string(rr), num(rep.success_rate), num(rep.wilson_lo), num(rep.wilson_hi),
                                             strat.name, num(rep.advantage), bound_cell}));
            if (rr == rounds) {
                out.summary.push_back("  " + strat.name + " N=" + std::to_string(rr) + ": success " + num(rep.success_rate) +
                                      " [" + num(rep.wilson_lo) + ", " + num(rep.wilson_hi) + "], advantage " +
                                      num(rep.advantage) + (bound.is_null() ? "" : ", TV bound " + bound_cell));
            }
        }
        Json entry = {{"name", strat.name}, {"adaptive", !strat.nonadaptive}, {"rows", rows}};
        entry["tv_bound_bracket"] = bracket;
        if (!bound_note.empty()) entry["tv_bound_note"] = bound_note;
        strategies.push_back(entry);
    }
    out.results["strategies"] = strategies;
}

void cmd_diagnostics(Params &p, std::uint64_t seed, Outcome &out) {
    const auto n = static_cast<unsigned>(p.integer("n", 1, 1, 3));
    const auto k = static_cast<unsigned>(p.integer("k", 1, 1, 2));
    const double eps = p.real("eps", 0.25, 0.0, 1.0);
    const auto rounds = static_cast<unsigned>(p.integer("N", 2, 1, 4));
    const auto samples = static_cast<std::size_t>(p.integer("samples", 1000, 2, 10000000));
    const auto sub_size = static_cast<std::size_t>(p.integer("sub_size", 4, 1, 64));
    const std::string tree_kind = p.choice("tree", "random-adaptive", {"standard-basis", "random-nonadaptive", "random-adaptive"});
    const auto branching = static_cast<std::size_t>(p.integer("branching", 0, 0, kDefaultMaxBranching));
    p.finish();

    const Index d = Index{1} << n;
    const auto dim = static_cast<std::size_t>(checked_pow(static_cast<std::size_t>(d), k, "diagnostics"));
    const std::size_t outcomes = branching == 0 ? dim : branching;
    if (outcomes < dim) throw ArgumentError("diagnostics: branching must be at least d^k");
    if (outcomes > kDefaultMaxBranching) throw ArgumentError("diagnostics: d^k exceeds the branching cap");

    const Rng master(seed);
    Rng tree_rng = master.stream(0), sub_rng = master.stream(1), mc_rng = master.stream(2);
    StrategyTree tree = tree_kind == "standard-basis"
                            ? StrategyTree::nonadaptive(std::vector<std::vector<PovmElement>>(rounds, standard_basis_povm(d, k)), d, k)
                            : random_strategy_tree(d, k, rounds, outcomes, tree_kind == "random-adaptive", tree_rng);
    std::vector<UnitaryMatrix> members;
    for (std::size_t i = 0; i < sub_size; ++i) members.push_back(haar_sample(d, sub_rng));
    const CircuitEnsemble sub = CircuitEnsemble::finite(members, std::vector<double>(sub_size, 1.0));
    const DiagnosticsRecord rec = adaptive_diagnostics(tree, eps, sub, CircuitEnsemble::haar(n), samples, mc_rng);

    Json nodes = Json::array();
    out.csv_header = "path,depth,p0,likelihood,g,g_se,phi,phi_se,k,k_se";
    for (const auto &nd : rec.nodes) {
        nodes.push_back({{"path", nd.path},
                         {"depth", nd.depth},
                         {"p0", nd.p0},
                         {"likelihood", nd.mixture_likelihood},
                         {"g", {{"mean", nd.g.mean}, {"se", nd.g.se}}},
                         {"phi", {{"mean", nd.phi.mean}, {"se", nd.phi.se}}},
                         {"k", {{"mean", nd.k_stat.mean}, {"se", nd.k_stat.se}}}});
        out.csv_rows.push_back(join_row({nd.path.empty() ? "root" : nd.path, std::to_string(nd.depth), num(nd.p0),
                                         num(nd.mixture_likelihood), num(nd.g.mean), num(nd.g.se), num(nd.phi.mean),
                                         num(nd.phi.se), num(nd.k_stat.mean), num(nd.k_stat.se)}));
    }
    out.results["tree"] = {{"kind", tree_kind}, {"d", d}, {"k", k}, {"depth", rounds}, {"adaptive", !tree.nonadaptive()}};
    out.results["nodes"] = nodes;
    out.results["chain"] = {{"lhs", rec.chain_lhs}, {"rhs", rec.chain_rhs}, {"terms", rec.chain_terms}, {"holds", rec.chain_holds}};
    out.summary.push_back("Diagnostics: " + tree_kind + " tree, d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                          ", N=" + std::to_string(rounds) + ", eps=" + num(eps));
    out.summary.push_back("  chain bound: KL " + num(rec.chain_lhs) + " <= " + num(rec.chain_rhs) +
                          (rec.chain_holds ? " (holds)" : " (VIOLATED)"));
    if (!rec.chain_holds) out.fail("chain-rule KL bound");
    if (tree.nonadaptive()) {
        const IngsterReport ing = ingster_bound_check(tree, eps, sub);
        out.results["ingster"] = {{"lhs", ing.lhs}, {"rhs", ing.rhs}, {"holds", ing.holds}};
        out.summary.push_back("  chi-squared bound: " + num(ing.lhs) + " <= " + num(ing.rhs) + (ing.holds ? " (holds)" : " (VIOLATED)"));
        if (!ing.holds) out.fail("nonadaptive chi-squared bound");
    }
}

void cmd_tournament(Params &p, std::uint64_t seed, Outcome &out) {
    const auto n = static_cast<unsigned>(p.integer("n", 3, 1, 5));
    const double eps = p.real("eps", 0.3, 0.0, 1.0, true);
    const auto alternatives = static_cast<std::size_t>(p.integer("alternatives", 7, 1, 63));
    const auto copies_param = static_cast<std::size_t>(p.integer("copies", 0, 0, 100000000));
    const auto trials = static_cast<std::size_t>(p.integer("trials", 200, 1, 10000000));
    const auto max_copies = static_cast<unsigned>(p.integer("entangled_copies", 6, 1, 12));
    p.finish();
    const std::size_t copies = copies_param == 0 ? tournament_copies(eps) : copies_param;

    const CircuitEnsemble ens = CircuitEnsemble::haar(n);
    const Rng master(seed);
    Rng t_rng = master.stream(0), h_rng = master.stream(1);
    const TournamentReport rep = run_tournament(ens, eps, alternatives, copies, trials, t_rng);

    const DensityMatrix mm = DensityMatrix::maximally_mixed(ens.dim());
    const DensityMatrix alt = build_state(ens.sample(h_rng), eps).rho;
    Json curve = Json::array();
    for (unsigned c = 1; c <= max_copies; ++c) {
        curve.push_back({{"copies", c}, {"success", helstrom_success_tensor_power(mm, alt, c)}});
    }
    out.csv_header = "candidates,copies_per_match,trials,successes,success_rate,wilson_lo,wilson_hi";
    out.csv_rows.push_back(join_row({std::to_string(rep.candidates), std::to_string(rep.copies_per_match),
                                     std::to_string(rep.trials), std::to_string(rep.successes), num(rep.success_rate),
                                     num(rep.wilson_lo), num(rep.wilson_hi)}));
    out.results["tournament"] = {{"candidates", rep.candidates},     {"copies_per_match", rep.copies_per_match},
                                 {"trials", rep.trials},             {"successes", rep.successes},
                                 {"success_rate", rep.success_rate}, {"wilson_lo", rep.wilson_lo},
                                 {"wilson_hi", rep.wilson_hi}};
    out.results["entangled_helstrom"] = curve;
    out.summary.push_back("Helstrom tournament: " + std::to_string(rep.candidates) + " candidates, d=" +
                          std::to_string(ens.dim()) + ", eps=" + num(eps) + ", " + std::to_string(copies) + " copies per match");
    out.summary.push_back("  success " + num(rep.success_rate) + " [" + num(rep.wilson_lo) + ", " + num(rep.wilson_hi) +
                          "] over " + std::to_string(trials) + " trials");
    out.summary.push_back("  optimal two-state success on " + std::to_string(max_copies) + " joint copies: " +
                          num(curve.back()["success"].get<double>()));
}

const std::vector<std::pair<std::string, Command>> &command_table() {
    static const std::vector<std::pair<std::string, Command>> table = {
        {"wg", cmd_wg},
        {"facts", cmd_facts},
        {"design", cmd_design},
        {"sim-rqc", [](Params &p, std::uint64_t s, Outcome &o) { cmd_sim(p, s, o, true); }},
        {"sim-mixedness", [](Params &p, std::uint64_t s, Outcome &o) { cmd_sim(p, s, o, false); }},
        {"diagnostics", cmd_diagnostics},
        {"tournament", cmd_tournament},
    };
    return table;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class WorkerScope {
   public:
    explicit WorkerScope(unsigned w) : saved_(default_workers()) { set_default_workers(w); }
    ~WorkerScope() { set_default_workers(saved_); }
    WorkerScope(const WorkerScope &) = delete;
    WorkerScope &operator=(const WorkerScope &) = delete;

   private:
    unsigned saved_;
};

}  // namespace

const char *version_string() { return REPLAB_VERSION; }

const std::vector<std::string> &experiment_commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &c : command_table()) v.push_back(c.first);
        return v;
    }();
    return names;
}

ExperimentOutput run_experiment(const std::string &config_json) {
    ExperimentOutput result;
    result.format = "json";
    try {
        Json cfg;
        try {
            cfg = Json::parse(config_json);
        } catch (const Json::parse_error &e) {
            throw ArgumentError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw ArgumentError("config must be a JSON object");
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
            static const std::set<std::string> allowed = {"command", "seed", "workers", "format", "params", "out"};
            if (!allowed.count(it.key())) throw ArgumentError("unknown config key '" + it.key() + "'");
        }
        if (!cfg.contains("command") || !cfg["command"].is_string()) throw ArgumentError("config needs a string 'command'");
        const std::string command = cfg["command"].get<std::string>();
        const auto &table = command_table();
        auto entry = std::find_if(table.begin(), table.end(), [&](const auto &c) { return c.first == command; });
        if (entry == table.end()) throw ArgumentError("unknown command '" + command + "'");

        std::uint64_t seed = 0;
        if (cfg.contains("seed")) {
            const Json &s = cfg["seed"];
            if (s.is_number_unsigned()) {
                seed = s.get<std::uint64_t>();
            } else if (s.is_number_integer() && s.get<long long>() >= 0) {
                seed = static_cast<std::uint64_t>(s.get<long long>());
            } else {
                throw ArgumentError("seed must be a nonnegative 64-bit integer");
            }
        }
        long long workers = 1;
        if (cfg.contains("workers")) {
            if (!cfg["workers"].is_number_integer()) throw ArgumentError("workers must be an integer");
            workers = cfg["workers"].get<long long>();
            if (workers < 1 || workers > 256) throw ArgumentError("workers must lie in [1, 256]");
        }
        if (cfg.contains("format")) {
            if (!cfg["format"].is_string()) throw ArgumentError("format must be a string");
            result.format = cfg["format"].get<std::string>();
            if (result.format != "json" && result.format != "csv") throw ArgumentError("format must be json or csv");
        }
        const Json params = cfg.contains("params") ? cfg["params"] : Json::object();

        Params p(params, command);
        Outcome out;
        {
            WorkerScope scope(static_cast<unsigned>(workers));
            entry->second(p, seed, out);
        }

        // Worker count is excluded: it never changes the output.
        Json resolved = {{"command", command}, {"seed", seed}, {"params", p.resolved()}};
        if (result.format == "json") {
            Json report = {{"replab_version", REPLAB_VERSION}, {"config", resolved}, {"results", out.results}};
            report["invariants_hold"] = out.invariants_hold;
            result.report = report.dump(2) + "\n";
        } else {
            std::string csv = "# replab " + std::string(REPLAB_VERSION) + "\n# config " + resolved.dump() + "\n";
            csv += out.csv_header + "\n";
            for (const auto &r : out.csv_rows) csv += r + "\n";
            result.report = csv;
        }
        for (const auto &line : out.summary) result.summary += line + "\n";
        if (!out.invariants_hold) {
            result.exit_code = kExitInvariant;
            result.error = "invariant violated: " + out.violation;
            result.summary += "INVARIANT VIOLATED: " + out.violation + "\n";
        }
    } catch (const ResourceError &e) {
        result.exit_code = kExitResource;
        result.error = e.what();
    } catch (const std::bad_alloc &) {
        result.exit_code = kExitResource;
        result.error = "out of memory";
    } catch (const ArgumentError &e) {
        result.exit_code = kExitConfig;
        result.error = e.what();
    } catch (const UnsupportedRegimeError &e) {
        result.exit_code = kExitConfig;
        result.error = e.what();
    } catch (const std::exception &e) {
        result.exit_code = kExitInvariant;
        result.error = e.what();
    }
    Json meta = {{"replab_version", REPLAB_VERSION}, {"generated_at", utc_timestamp()}, {"exit_code", result.exit_code}};
    result.meta = meta.dump(2) + "\n";
    return result;
}

}  // namespace replab
