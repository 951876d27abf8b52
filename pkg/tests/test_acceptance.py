"""Acceptance battery: one test per shipped criterion, in order.

Each test drives the public API the way a release check would and prints a
single PASS/FAIL line through the criterion_line fixture.
"""

import time
from math import comb

from pebblekit import (
    CampaignConfig,
    build_J_r,
    max_path_partition,
    num_configs,
    random_tree,
    run_campaign,
    tree_pi,
)

from conftest import PROPERTY_TARGET
from oracles import brute_connectivity, brute_path_partitions, majorizes


def test_criterion_01_petersen_pebbling_number(criterion_line, petersen):
    start = time.perf_counter()
    pi_report = run_campaign(CampaignConfig(claim="thm-3.5"))
    unique = run_campaign(CampaignConfig(claim="claim-A"))
    elapsed = time.perf_counter() - start
    jr = list(build_J_r(petersen, 0).counts)
    ok = (pi_report.verdict == "pass"
          and pi_report.to_dict()["computed"] == 10
          and pi_report.configs_checked == comb(18, 9) + comb(19, 9)
          and unique.verdict == "pass"
          and unique.to_dict()["computed"] == [jr]
          and elapsed < 60)
    criterion_line(1, ok,
                   f"pi(Petersen) = 10 by exhausting {comb(18, 9):,} size-9 "
                   f"and {comb(19, 9):,} size-10 configurations; the single "
                   f"size-9 witness is the all-ones-off-root one "
                   f"({elapsed:.1f}s)")


def test_criterion_02_petersen_two_fold_number(criterion_line):
    report = run_campaign(CampaignConfig(claim="cor-3.10"))
    data = report.to_dict()
    ok = (report.verdict == "pass"
          and data["computed"] == {"1": 10, "2": 13}
          and report.configs_checked == 140_998 + comb(22, 9)
          and data["witnesses"][0]["lower_witness"][0] == 0
          and sum(data["witnesses"][0]["lower_witness"]) == 12
          and data["wall_time_s"] < 900)
    criterion_line(2, ok,
                   f"2-fold pi(Petersen) = 13: size-12 doubled-stack witness "
                   f"plus a clean scan of {comb(22, 9):,} size-13 "
                   f"configurations ({data['wall_time_s']}s)")


def test_criterion_03_petersen_target_conjecture(criterion_line):
    report = run_campaign(CampaignConfig(claim="thm-3.11"))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and computed["orbits"] == 3
          and computed["orbit_representatives"] == [[0, 0], [0, 1], [0, 7]]
          and computed["counterexamples"] == 0)
    criterion_line(3, ok,
                   "every size-2 demand on the Petersen graph is covered by "
                   "3 automorphism orbits and none has an unsolvable size-13 "
                   "configuration")


def test_criterion_04_two_path_formula_exhaustive(criterion_line):
    params = {"enumerate": {"max_n": 8, "d_values": [2, 3]}, "t": [1, 2, 3]}
    report = run_campaign(CampaignConfig(claim="thm-2.1", params=params))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and len(computed) == 20
          and all(set(per_t) == {"1", "2", "3"} for per_t in computed.values()))
    criterion_line(4, ok,
                   "t-fold value t*2^d + n - 2d confirmed exhaustively on "
                   "all 20 2-paths with n <= 8, d in {2, 3}, t in {1, 2, 3}")


def test_criterion_05_two_path_target_conjecture(criterion_line):
    report = run_campaign(CampaignConfig(claim="thm-2.6"))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and computed["two_paths"] == 20
          and computed["counterexamples"] == 0)
    criterion_line(5, ok,
                   "every size-2 demand on the same 20 2-paths is solvable "
                   "from every configuration of the 2-fold size")


def test_criterion_06_random_tree_values(criterion_line):
    report = run_campaign(CampaignConfig(claim="fact-2.2"))
    computed = report.to_dict()["computed"]
    runner_ok = (report.verdict == "pass"
                 and computed["trees"] == 50
                 and computed["mismatches"] == 0)

    # rebuild the runner's tree sample and certify each maximum path
    # partition against the full partition enumeration
    trees = []
    attempt = 0
    while len(trees) < 50:
        n = 3 + attempt % 7
        tree = random_tree(n, attempt)
        attempt += 1
        partition = max_path_partition(tree)
        if num_configs(n, tree_pi(partition, 3)) <= 3_000_000:
            trees.append((tree, partition))
    partitions_ok = True
    for tree, partition in trees:
        everything = brute_path_partitions(tree)
        if partition not in everything:
            partitions_ok = False
        if not all(majorizes(partition, other) for other in everything):
            partitions_ok = False

    criterion_line(6, runner_ok and partitions_ok,
                   "50 seeded random trees match the path-partition formula "
                   "for t in {1, 2, 3}, with every maximum partition "
                   "certified against brute-force enumeration")


def test_criterion_07_spinal_tree_case_formula(criterion_line):
    report = run_campaign(CampaignConfig(claim="cor-2.3"))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and computed["roots_checked"] == 7110
          and computed["mismatches"] == 0)
    criterion_line(7, ok,
                   "spanning-tree value at all 7,110 roots of the 2-paths "
                   "with n <= 12 matches the eccentricity case formula and "
                   "stays within 2^d + n - d - 1")


def test_criterion_08_kneser_connectivity(criterion_line, petersen):
    report = run_campaign(CampaignConfig(claim="cor-3.3"))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and computed == {"5": 3, "6": 6, "7": 10}
          and brute_connectivity(petersen) == comb(3, 2))
    criterion_line(8, ok,
                   "vertex connectivity of the 2-subset Kneser graphs is "
                   "binom(m-2, 2) for m = 5, 6, 7 (m = 5 cross-checked by "
                   "subset enumeration)")


def test_criterion_09_stack_constructions_unsolvable(criterion_line):
    report = run_campaign(CampaignConfig(claim="lem-3.6"))
    cases = report.to_dict()["computed"]["cases"]
    ok = (report.verdict == "pass"
          and len(cases) == 12
          and all(c["unsolvable"] and c["size"] == c["size_expected"]
                  for c in cases))
    criterion_line(9, ok,
                   "doubled- and quadrupled-stack configurations are t-fold "
                   "unsolvable with the predicted sizes for m in {5, 6}, "
                   "t in {1, 2, 3}")


def test_criterion_10_cheap_solutions(criterion_line):
    report = run_campaign(CampaignConfig(claim="claim-B"))
    computed = report.to_dict()["computed"]
    ok = (report.verdict == "pass"
          and computed["cost_violations"] == 0
          and computed["max_cost"] == 4)
    criterion_line(10, ok,
                   "minimum-cost root solutions over all size-13 Petersen "
                   "configurations never use more than 4 pebbles")


def test_criterion_11_large_kneser_reduced_confidence(criterion_line):
    report = run_campaign(CampaignConfig(claim="thm-3.5", params={"m": 6}))
    data = report.to_dict()
    witness = data["witnesses"][0]
    ok = (report.verdict == "pass"
          and data["computed"] == 15
          and witness["unsolvable"]
          and sum(witness["size14_witness"]) == 14
          and witness["samples"] == 10 ** 6)
    criterion_line(11, ok,
                   "pi(K(6,2)) = 15 at sampling confidence: exact size-14 "
                   "witness plus 10^6 seeded random size-15 configurations, "
                   "all solvable")


def test_criterion_12_engine_property_suites(criterion_line, property_suites):
    ok = len(property_suites) == 5 and all(
        suite["instances"] >= PROPERTY_TARGET and not suite["failures"]
        for suite in property_suites.values())
    criterion_line(12, ok,
                   f"5 randomized engine invariant suites, >= "
                   f"{PROPERTY_TARGET:,} seeded instances each, zero "
                   f"failures")
