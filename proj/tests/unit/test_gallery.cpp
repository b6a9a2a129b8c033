#include "lambert/criteria.hpp"
#include "lambert/gallery.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace lambert;

namespace {

std::vector<std::vector<PointId>> blocks_of(const Instance& inst) {
    return inst.partition.block_ids(inst.space);
}

/// Even atoms of the growing-blocks space from the definition: A_j starts at
/// 2(1 + j(j-1)/2) and holds j consecutive even points.
std::vector<PointId> even_atom(std::size_t j) {
    const std::size_t k = 1 + j * (j - 1) / 2;
    std::vector<PointId> out;
    for (std::size_t i = 0; i < j; ++i) out.push_back(static_cast<PointId>(2 * (k + i)));
    return out;
}

}  // namespace

TEST_SUITE("instance_gallery") {

TEST_CASE("merged pair layout") {
    const Instance inst = merged_pair_instance(5, PowerRule{}, PowerRule{});
    const std::vector<std::vector<PointId>> expected{{1, 2}, {3}, {4}, {5}};
    CHECK(blocks_of(inst) == expected);
    CHECK(inst.u == MeasurableFunction::constant(5, 1.0));
    CHECK_THROWS_AS((void)merged_pair_instance(1, PowerRule{}, PowerRule{}), DomainError);
}

TEST_CASE("merged pair zero weights are compact everywhere") {
    const Instance inst = merged_pair_instance(20, PowerRule{0.0, 0.0}, PowerRule{0.0, 0.0});
    for (const auto& [p, q] : {std::pair{3.0, 2.0}, std::pair{2.0, 3.0}, std::pair{2.0, 2.0},
                               std::pair{2.0, 1.0}}) {
        const Exponents e(p, q);
        CHECK(check_compactness(ProfileInput{inst.model->profile(e)}, std::nullopt, e).status ==
              Status::Compact);
    }
    const Verdict l1 = check_compactness(
        PointInput{inst.op(), inst.model->l1_atom_tail(2.0), inst.model->l1_point_tail(2.0)},
        std::nullopt, Exponents(1.0, 2.0));
    CHECK(l1.status == Status::Compact);
}

TEST_CASE("merged pair series terms at 10^4 points") {
    const Exponents e(3.0, 2.0);
    const Instance inst = merged_pair_instance(10000, PowerRule{1.0, 0.0}, PowerRule{1.0, -1.0 / 3.0});
    const auto rows = atom_rows(inst.model->profile(e), e);
    REQUIRE(rows.size() == 9999);
    double worst = 0.0;
    for (std::size_t j = 2; j <= rows.size(); ++j) {
        const oracle::ld n = static_cast<oracle::ld>(j + 1);
        const oracle::ld wu = std::pow(n, -1.0L / 3.0L);
        const oracle::ld want = std::pow(wu, 6.0L);
        worst = std::max(worst, static_cast<double>(std::fabs(rows[j - 1].term - want) / want));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("merged pair profile rule extends the head") {
    const Exponents e(2.0, 3.0);
    const Instance inst = merged_pair_instance(30, PowerRule{2.0, -0.5}, PowerRule{0.5, 0.25});
    const AtomProfile prof = inst.model->profile(e);
    CHECK(prof.head_size() == 29);
    const AtomStat far = prof.at(500);
    CHECK(far.mu == 1.0);
    CHECK(far.eu == doctest::Approx(std::pow(2.0 * std::pow(501.0, -0.5), 2.0)));
    CHECK(far.ew == doctest::Approx(std::pow(0.5 * std::pow(501.0, 0.25), 3.0)));
}

TEST_CASE("growing blocks layout") {
    const Instance inst = growing_blocks_instance(3);
    std::vector<std::vector<PointId>> evens;
    std::set<PointId> odds;
    for (const auto& b : blocks_of(inst)) {
        if (b.front() % 2 == 0) {
            evens.push_back(b);
        } else {
            CHECK(b.size() == 1);
            odds.insert(b.front());
        }
    }
    const std::vector<std::vector<PointId>> expected{{2}, {4, 6}, {8, 10, 12}};
    CHECK(evens == expected);
    CHECK(odds == std::set<PointId>{1, 3, 5, 7, 9, 11});
    CHECK(inst.space.size() == 12);
    CHECK(inst.w[11] == doctest::Approx(std::pow(12.0, -3.0)));
}

TEST_CASE("growing blocks atom enumeration") {
    const Instance inst = growing_blocks_instance(25);
    const auto blocks = blocks_of(inst);
    for (std::size_t n = 1; n <= blocks.size(); ++n) {
        const auto pts = growing_blocks_atom(n);
        std::vector<PointId> ids(pts.begin(), pts.end());
        CHECK(ids == blocks[n - 1]);
    }
    for (std::size_t j = 1; j <= 40; ++j) {
        const auto want = even_atom(j);
        bool found = false;
        for (std::size_t n = 1; n <= 2000 && !found; ++n) {
            const auto pts = growing_blocks_atom(n);
            if (static_cast<PointId>(pts.front()) == want.front()) {
                found = true;
                CHECK(std::vector<PointId>(pts.begin(), pts.end()) == want);
            }
        }
        CHECK(found);
    }
}

TEST_CASE("growing blocks conditional |w|^q on even points") {
    // E(|w|^q) on A_j is the average of (2k)^{-3q}, ..., (2k + 2j - 2)^{-3q}.
    const Instance inst = growing_blocks_instance(30);
    for (double q : {1.5, 2.0, 3.0}) {
        const Exponents e(2.0, q);
        const AtomProfile prof = profile_from_points(inst.space, inst.partition, inst.u, inst.w, e);
        for (std::size_t n = 1; n <= inst.partition.block_count(); ++n) {
            const auto b = inst.partition.block(n);
            if (inst.space.id(b[0]) % 2 == 1) continue;
            oracle::ld sum = 0.0L;
            for (std::size_t pos : b) sum += std::pow(static_cast<oracle::ld>(inst.space.id(pos)), -3.0L * q);
            CHECK(oracle::rel_close(prof.at(n).ew, sum / b.size(), 1e-12));
        }
    }
}

TEST_CASE("growing blocks pointwise bounds") {
    // On the j-th even atom with offset k: (E|w|^q)^{1/q}(E|u|^p)^{1/p} <= 4k/(8k^3);
    // on the odd point 2n-1: <= (2n-1)^{-2}.
    const Instance inst = growing_blocks_instance(20);
    for (double p : {1.5, 2.0, 3.0}) {
        for (double q : {1.5, 2.0, 5.0}) {
            for (std::size_t pos = 0; pos < inst.space.size() && inst.space.id(pos) <= 200; ++pos) {
                const auto b = inst.partition.block(inst.partition.atom_of(pos));
                oracle::ld sw = 0.0L;
                oracle::ld su = 0.0L;
                for (std::size_t x : b) {
                    const oracle::ld m = static_cast<oracle::ld>(inst.space.id(x));
                    sw += std::pow(m, -3.0L * q);
                    su += std::pow(m, static_cast<oracle::ld>(p));
                }
                const oracle::ld value = std::pow(sw / b.size(), 1.0L / q) * std::pow(su / b.size(), 1.0L / p);
                const PointId m = inst.space.id(pos);
                if (m % 2 == 0) {
                    const oracle::ld k = static_cast<oracle::ld>(inst.space.id(b[0]) / 2);
                    CHECK(value <= 4.0L * k / (8.0L * k * k * k) * (1.0L + 1e-12L));
                } else {
                    CHECK(value <= std::pow(static_cast<oracle::ld>(m), -2.0L) * (1.0L + 1e-12L));
                }
            }
        }
    }
}

TEST_CASE("random instances") {
    const Instance a = random_instance(9, 30, 7, 2.0);
    const Instance b = random_instance(9, 30, 7, 2.0);
    CHECK(a.space == b.space);
    CHECK(a.partition == b.partition);
    CHECK(a.u == b.u);
    CHECK(a.w == b.w);
    CHECK_FALSE(random_instance(10, 30, 7, 2.0).u == a.u);
    CHECK(random_instance(4, 12, 12, 1.0).partition == Partition::singletons(PointSpace::counting(12)));
    CHECK_THROWS_AS((void)random_instance(0, 3, 4, 1.0), DomainError);
    CHECK_THROWS_AS((void)random_instance(0, 3, 2, 0.0), DomainError);
}

TEST_CASE("random instance invariants over 100 seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = random_instance(seed, 40, 1 + seed % 12, 1.5);
        CHECK(inst.partition.block_count() == 1 + seed % 12);
        CHECK(inst.partition.point_count() == inst.space.size());
        CompensatedSum total;
        std::size_t covered = 0;
        for (std::size_t n = 1; n <= inst.partition.block_count(); ++n) {
            CHECK_FALSE(inst.partition.block(n).empty());
            for (std::size_t pos : inst.partition.block(n)) {
                CHECK(inst.partition.atom_of(pos) == n);
                total += inst.space.mass(pos);
                ++covered;
            }
        }
        CHECK(covered == inst.space.size());
        CHECK(oracle::rel_close(total.value(), inst.space.total_mass(), 1e-12));
        for (std::size_t i = 0; i < inst.space.size(); ++i) {
            CHECK(inst.space.mass(i) > 0.1 - 1e-15);
            CHECK(inst.space.mass(i) < 10.0);
            CHECK(std::abs(inst.u[i]) <= 1.5);
        }
    }
}

}
