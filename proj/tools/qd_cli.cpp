// Command-line front end: reproducible protocol runs, attack experiments,
// relation tables, leakage reports and the efficiency comparison.
//
// Exit codes: 0 = exchange complete, 2 = protocol abort, 64 = usage error.

#include "qd/attacks.hpp"
#include "qd/experiments.hpp"
#include "qd/leakage.hpp"
#include "qd/protocol.hpp"
#include "qd/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace qd;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAbort = 2;
constexpr int kExitUsage = 64;

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string format = "text";
};

bool structured(const CommonOpts& opts) { return opts.format == "json-lines"; }

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return kExitUsage;
}

std::string pretty_label(StateLabel label) {
    return to_string(label.pol) + "⊗" + to_string(label.spa);
}

// ---- run -------------------------------------------------------------------

struct RunOpts {
    CommonOpts common;
    std::size_t n = 0; // 0 = default 64, or inferred from the secrets
    std::size_t delta1 = 16;
    std::size_t delta2 = 16;
    std::string alice_bits;
    std::string bob_bits;
    std::string attack = "none";
    double beta = 0.0;
    std::string force_initial;
    std::string dump_transcript;
};

int cmd_run(const RunOpts& opts) {
    const auto kind = parse_attack_kind(opts.attack);
    if (!kind) return usage_error("unknown attack kind '" + opts.attack + "'");

    ProtocolConfig cfg;
    cfg.delta1 = opts.delta1;
    cfg.delta2 = opts.delta2;
    cfg.seed = opts.common.seed;

    if (!opts.force_initial.empty()) {
        const auto label = parse_state_label(opts.force_initial);
        if (!label) return usage_error("cannot parse --force-initial '" + opts.force_initial + "'");
        cfg.forced_initial = *label;
    }

    std::optional<SecretMessage> alice;
    std::optional<SecretMessage> bob;
    if (!opts.alice_bits.empty()) {
        alice = SecretMessage::from_bits(opts.alice_bits);
        if (!alice) return usage_error("--alice must be a bit string of even length");
    }
    if (!opts.bob_bits.empty()) {
        bob = SecretMessage::from_bits(opts.bob_bits);
        if (!bob) return usage_error("--bob must be a bit string of even length");
    }

    std::size_t n = opts.n;
    if (n == 0) n = alice ? alice->size() : (bob ? bob->size() : 64);
    if (alice && alice->size() != n) return usage_error("--alice must hold exactly 2N bits");
    if (bob && bob->size() != n) return usage_error("--bob must hold exactly 2N bits");
    cfg.n_pairs = n;

    Rng rng(cfg.seed);
    if (!alice) alice = SecretMessage::random(n, rng);
    if (!bob) bob = SecretMessage::random(n, rng);

    const AttackStrategy strategy{*kind, opts.beta};
    const SessionResult result = run_session(cfg, *alice, *bob, strategy, rng);

    if (!opts.dump_transcript.empty()) {
        std::ofstream out(opts.dump_transcript);
        if (!out) return usage_error("cannot open '" + opts.dump_transcript + "' for writing");
        out << transcript_lines(result.transcript);
    }

    if (structured(opts.common)) {
        json j = to_json(result);
        j["n"] = cfg.n_pairs;
        j["delta1"] = cfg.delta1;
        j["delta2"] = cfg.delta2;
        j["attack"] = to_string(*kind);
        j["alice_bits"] = alice->to_bits();
        j["bob_bits"] = bob->to_bits();
        std::cout << j.dump() << "\n";
    } else {
        std::printf("seed          : %llu\n", static_cast<unsigned long long>(cfg.seed));
        std::printf("pairs         : %zu  (delta1 %zu, delta2 %zu)\n", cfg.n_pairs,
                    cfg.delta1, cfg.delta2);
        std::printf("attack        : %s\n", to_string(*kind).c_str());
        if (result.aborted) {
            std::printf("status        : aborted at %s (error rate %.4f)\n",
                        result.abort_stage.c_str(), result.error_rate);
        } else {
            std::printf("status        : completed\n");
            std::printf("alice sent    : %s\n", alice->to_bits().c_str());
            std::printf("bob decoded   : %s  [%s]\n", result.bob_decoded->to_bits().c_str(),
                        result.bob_decoded->to_bits() == alice->to_bits() ? "match" : "MISMATCH");
            std::printf("bob sent      : %s\n", bob->to_bits().c_str());
            std::printf("alice decoded : %s  [%s]\n", result.alice_decoded->to_bits().c_str(),
                        result.alice_decoded->to_bits() == bob->to_bits() ? "match" : "MISMATCH");

            std::string announced;
            for (const auto& event : result.transcript.events) {
                const auto* msg = std::get_if<ClassicalMessage>(&event.body);
                if (!msg) continue;
                const auto* ann = std::get_if<OutcomeAnnouncement>(&msg->payload);
                if (!ann) continue;
                for (const auto& entry : ann->entries) {
                    const CompositeBasis basis = CompositeBasis::from_code(entry.basis_code);
                    if (!announced.empty()) announced += ' ';
                    announced += pretty(basis) + ":" +
                                 pretty_label(basis.eigenstate_label(entry.outcome_code));
                }
            }
            std::printf("announced     : %s\n", announced.c_str());
        }
    }
    return result.aborted ? kExitAbort : kExitOk;
}

// ---- attack ----------------------------------------------------------------

struct AttackOpts {
    CommonOpts common;
    std::string attack;
    std::size_t n = 1;
    std::size_t delta1 = 1;
    std::size_t delta2 = 0;
    double beta = 0.5;
    std::uint64_t trials = 100000;
};

int cmd_attack(const AttackOpts& opts) {
    const auto kind = parse_attack_kind(opts.attack);
    if (!kind) return usage_error("unknown attack kind '" + opts.attack + "'");
    if (opts.trials == 0) return usage_error("--trials must be at least 1");
    if (*kind == AttackKind::EntangleMeasure && (opts.beta < 0.0 || opts.beta > 1.0))
        return usage_error("--beta must lie in [0, 1]");

    ProtocolConfig cfg;
    cfg.n_pairs = opts.n;
    cfg.delta1 = opts.delta1;
    cfg.delta2 = opts.delta2;
    cfg.seed = opts.common.seed;

    const AttackStrategy strategy{*kind, opts.beta};
    const double closed = detection_probability_closed_form(*kind, cfg.delta1, opts.beta);
    const DetectionEstimate est =
        estimate_detection_probability(strategy, cfg, opts.trials, Rng(cfg.seed));
    const double sigma = std::sqrt(closed * (1.0 - closed) / static_cast<double>(opts.trials));
    const bool ok = std::abs(est.estimate - closed) <= 3.0 * sigma;

    if (structured(opts.common)) {
        json j;
        j["record"] = "attack";
        j["kind"] = to_string(*kind);
        j["delta1"] = cfg.delta1;
        j["delta2"] = cfg.delta2;
        j["n"] = cfg.n_pairs;
        j["trials"] = est.trials;
        j["seed"] = cfg.seed;
        if (*kind == AttackKind::EntangleMeasure) j["beta"] = opts.beta;
        j["closed_form"] = closed;
        j["estimate"] = est.estimate;
        j["std_error"] = est.std_error;
        j["within_3sigma"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        std::printf("attack        : %s\n", to_string(*kind).c_str());
        if (*kind == AttackKind::EntangleMeasure)
            std::printf("beta          : %.6f  (beta^2 = %.6f)\n", opts.beta,
                        opts.beta * opts.beta);
        std::printf("delta1        : %zu    delta2: %zu    pairs: %zu\n", cfg.delta1,
                    cfg.delta2, cfg.n_pairs);
        std::printf("trials        : %llu    seed: %llu\n",
                    static_cast<unsigned long long>(est.trials),
                    static_cast<unsigned long long>(cfg.seed));
        std::printf("closed form   : %.8f\n", closed);
        std::printf("monte carlo   : %.8f\n", est.estimate);
        std::printf("std error     : %.8f\n", est.std_error);
        std::printf("3-sigma check : %s (|diff| %.6f vs band %.6f)\n", ok ? "OK" : "FAIL",
                    std::abs(est.estimate - closed), 3.0 * sigma);
    }

    if (*kind == AttackKind::EntangleMeasure) {
        // The single analyzed decoy: (H,b1) checked in its own all-Z basis.
        const StateLabel hb1{PolState::H, SpaState::B1};
        const double analytic = entangle_detection_for_decoy(hb1, opts.beta);
        const DetectionEstimate decoy_est = estimate_entangle_decoy_detection(
            hb1, opts.beta, opts.trials, Rng(cfg.seed).substream(1));
        const double dsigma =
            std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(opts.trials));
        const bool dok = std::abs(decoy_est.estimate - analytic) <= 3.0 * dsigma;
        if (structured(opts.common)) {
            json j;
            j["record"] = "attack-decoy";
            j["decoy"] = to_string(hb1);
            j["basis"] = token(preparation_basis(hb1));
            j["beta"] = opts.beta;
            j["analytic"] = analytic;
            j["estimate"] = decoy_est.estimate;
            j["std_error"] = decoy_est.std_error;
            j["within_3sigma"] = dok;
            std::cout << j.dump() << "\n";
        } else {
            std::printf("per-decoy (H,b1) in %s\n", pretty(preparation_basis(hb1)).c_str());
            std::printf("  analytic    : %.8f\n", analytic);
            std::printf("  monte carlo : %.8f\n", decoy_est.estimate);
            std::printf("  3-sigma     : %s\n", dok ? "OK" : "FAIL");
        }
    }
    return kExitOk;
}

// ---- tables ----------------------------------------------------------------

void print_table_text(const RelationTable& table) {
    std::printf("initial state %s, basis %s\n", pretty_label(table.initial).c_str(),
                pretty(preparation_basis(table.initial)).c_str());
    std::printf("  %-10s", "bob\\alice");
    for (int a = 0; a < 4; ++a)
        std::printf("%-8s", to_string(BitPair::from_index(a)).c_str());
    std::printf("\n");
    for (int b = 0; b < 4; ++b) {
        std::printf("  %-10s", to_string(BitPair::from_index(b)).c_str());
        for (int a = 0; a < 4; ++a)
            std::printf("%-8s", pretty_label(table.cells[b][a]).c_str());
        std::printf("\n");
    }
}

struct TablesOpts {
    CommonOpts common;
    std::string initial; // empty = the four published initial states
};

int cmd_tables(const TablesOpts& opts) {
    std::vector<StateLabel> initials;
    if (opts.initial.empty()) {
        initials = {StateLabel{PolState::H, SpaState::S}, StateLabel{PolState::H, SpaState::A},
                    StateLabel{PolState::V, SpaState::S}, StateLabel{PolState::V, SpaState::A}};
    } else {
        const auto label = parse_state_label(opts.initial);
        if (!label) return usage_error("cannot parse --initial '" + opts.initial + "'");
        initials = {*label};
    }

    bool first = true;
    for (const StateLabel initial : initials) {
        const RelationTable table = build_relation_table(initial);
        if (structured(opts.common)) {
            for (int b = 0; b < 4; ++b)
                for (int a = 0; a < 4; ++a) {
                    json j;
                    j["record"] = "table";
                    j["initial"] = to_string(initial);
                    j["bob"] = to_string(BitPair::from_index(b));
                    j["alice"] = to_string(BitPair::from_index(a));
                    j["outcome"] = to_string(table.cells[b][a]);
                    std::cout << j.dump() << "\n";
                }
        } else {
            if (!first) std::printf("\n");
            print_table_text(table);
        }
        first = false;
    }
    return kExitOk;
}

// ---- leakage ----------------------------------------------------------------

int cmd_leakage(const CommonOpts& opts) {
    bool all_four_bits = true;
    for (const CompositeBasis& basis : all_composite_bases()) {
        for (int outcome = 0; outcome < 4; ++outcome) {
            const CandidateSet set = eve_candidate_set(basis, outcome);
            const double entropy = leakage_entropy(set);

            std::set<std::pair<int, int>> seen;
            for (const Candidate& c : set.candidates)
                seen.insert({c.alice.index(), c.bob.index()});
            const bool partition = seen.size() == 16 && set.candidates.size() == 16;
            all_four_bits = all_four_bits && partition && std::abs(entropy - 4.0) < 1e-12;

            if (structured(opts)) {
                json j;
                j["record"] = "leakage";
                j["basis"] = token(basis);
                j["outcome"] = to_string(basis.eigenstate_label(outcome));
                j["candidates"] = set.candidates.size();
                j["entropy_bits"] = entropy;
                j["partition"] = partition;
                std::cout << j.dump() << "\n";
            } else {
                std::printf("basis %s outcome %-4s : candidates %zu, entropy %.12f bits, partition %s\n",
                            pretty(basis).c_str(),
                            pretty_label(basis.eigenstate_label(outcome)).c_str(),
                            set.candidates.size(), entropy, partition ? "ok" : "BROKEN");
            }
        }
    }
    if (!structured(opts))
        std::printf("%s\n", all_four_bits
                                ? "every announcement leaves 4.0 bits of uncertainty; nothing leaks"
                                : "LEAKAGE DETECTED: some announcement narrows the secrets");
    return kExitOk;
}

// ---- efficiency --------------------------------------------------------------

int cmd_efficiency(const CommonOpts& opts) {
    struct Row {
        const char* name;
        EfficiencyInput input;
    };
    const Row rows[] = {
        {"this-protocol", {4.0, 4.0, 4.0}},
        {"single-DOF dialogue (Shi et al. 2010)", {2.0, 2.0, 2.0}},
        {"two-DOF improved encoding (Zhang & Situ 2016)", {2.0, 2.0, 2.0}},
    };
    const double bits_per_pair_here = 4.0;
    const double bits_per_pair_single_dof = 2.0;

    if (structured(opts)) {
        for (const Row& row : rows) {
            json j;
            j["record"] = "efficiency";
            j["protocol"] = row.name;
            j["secret_bits"] = row.input.secret_bits;
            j["qubits"] = row.input.qubits_used;
            j["classical_bits"] = row.input.classical_bits;
            j["eta"] = cabello_efficiency(row.input);
            std::cout << j.dump() << "\n";
        }
        json j;
        j["record"] = "capacity";
        j["bits_per_photon_pair"] = bits_per_pair_here;
        j["single_dof_bits_per_pair"] = bits_per_pair_single_dof;
        j["ratio"] = bits_per_pair_here / bits_per_pair_single_dof;
        std::cout << j.dump() << "\n";
    } else {
        std::printf("%-46s %-12s %-8s %-10s %s\n", "protocol", "secret bits", "qubits",
                    "classical", "efficiency");
        for (const Row& row : rows)
            std::printf("%-46s %-12.0f %-8.0f %-10.0f %.0f%%\n", row.name,
                        row.input.secret_bits, row.input.qubits_used,
                        row.input.classical_bits, 100.0 * cabello_efficiency(row.input));
        std::printf("capacity: %.0f bits per photon pair vs %.0f single-DOF (ratio %.0fx)\n",
                    bits_per_pair_here, bits_per_pair_single_dof,
                    bits_per_pair_here / bits_per_pair_single_dof);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator for an information-leakage-resistant quantum dialogue "
                 "protocol on two-DOF single photons"};
    app.require_subcommand(1);

    RunOpts run_opts;
    AttackOpts attack_opts;
    TablesOpts tables_opts;
    CommonOpts leakage_opts;
    CommonOpts efficiency_opts;

    const auto add_common = [](CLI::App* cmd, CommonOpts& common) {
        cmd->add_option("--seed", common.seed, "64-bit seed")->envname("QD_SEED");
        cmd->add_option("--format", common.format, "output format")
            ->check(CLI::IsMember({"text", "json-lines"}));
    };

    CLI::App* run = app.add_subcommand("run", "run one protocol session");
    add_common(run, run_opts.common);
    run->add_option("--n", run_opts.n, "number of message pairs");
    run->add_option("--delta1", run_opts.delta1, "first-check decoy count");
    run->add_option("--delta2", run_opts.delta2, "second-check decoy count");
    run->add_option("--alice", run_opts.alice_bits, "Alice's bits (length 2N)");
    run->add_option("--bob", run_opts.bob_bits, "Bob's bits (length 2N)");
    run->add_option("--attack", run_opts.attack,
                    "none|intercept-resend|measure-resend|entangle-measure");
    run->add_option("--beta", run_opts.beta, "entangle-measure coupling amplitude");
    run->add_option("--force-initial", run_opts.force_initial,
                    "fix every pair's initial state, e.g. H,s (test hook)");
    run->add_option("--dump-transcript", run_opts.dump_transcript,
                    "write the transcript to this file, one event per line");

    CLI::App* attack = app.add_subcommand("attack", "detection-probability experiment");
    add_common(attack, attack_opts.common);
    attack->add_option("--attack", attack_opts.attack,
                       "intercept-resend|measure-resend|entangle-measure|none")
        ->required();
    attack->add_option("--n", attack_opts.n, "message pairs per session");
    attack->add_option("--delta1", attack_opts.delta1, "first-check decoy count");
    attack->add_option("--delta2", attack_opts.delta2,
                       "second-check decoy count (0 isolates the first check)");
    attack->add_option("--beta", attack_opts.beta, "entangle-measure coupling amplitude");
    attack->add_option("--trials", attack_opts.trials, "Monte Carlo sessions");

    CLI::App* tables = app.add_subcommand("tables", "relation tables");
    add_common(tables, tables_opts.common);
    tables->add_option("--initial", tables_opts.initial,
                       "initial state, e.g. H,s (default: the four Zp(x)Xs states)");

    CLI::App* leakage = app.add_subcommand("leakage", "candidate-set entropy per announcement");
    add_common(leakage, leakage_opts);

    CLI::App* efficiency = app.add_subcommand("efficiency", "efficiency comparison");
    add_common(efficiency, efficiency_opts);

    int exit_code = kExitOk;
    run->callback([&] { exit_code = cmd_run(run_opts); });
    attack->callback([&] { exit_code = cmd_attack(attack_opts); });
    tables->callback([&] { exit_code = cmd_tables(tables_opts); });
    leakage->callback([&] { exit_code = cmd_leakage(leakage_opts); });
    efficiency->callback([&] { exit_code = cmd_efficiency(efficiency_opts); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    return exit_code;
}
