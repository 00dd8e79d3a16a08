#include <doctest.h>

#include "svir/algebra.hpp"
#include "svir/derivations.hpp"
#include "test_helpers.hpp"

using namespace svir;
using svir::testing::rat;

namespace {

const AlgebraConfig kR{0, true};
const AlgebraConfig kRless{0, false};
const AlgebraConfig kNSless{1, false};

Element L(std::int64_t m, Scalar c = Scalar(1)) { return Element::single(BasisSymbol::L(m), c); }
Element G2(std::int64_t d, Scalar c = Scalar(1)) {
    return Element::single(BasisSymbol{Kind::G, d}, c);
}

} // namespace

TEST_CASE("map table invariants") {
    // linearly dependent inputs are rejected
    CHECK_THROWS_AS(MapTable(kR, {{L(1), L(1)}, {L(1, rat(2)), L(2)}}), error);
    CHECK_THROWS_AS(MapTable(kR, {{Element::zero(), L(1)}}), error);

    // declared parity is enforced against the outputs
    CHECK_THROWS_AS(MapTable(kR, {{L(1), G2(2)}}, Parity::even), error);
    CHECK_NOTHROW(MapTable(kR, {{L(1), G2(2)}}, Parity::odd));
    CHECK_NOTHROW(MapTable(kR, {{L(1), Element::zero()}}, Parity::even));

    // apply extends linearly over general inputs and rejects the rest
    MapTable t(kR, {{L(1) + L(2), L(0)}, {L(1) - L(2), G2(0)}});
    CHECK(t.apply(L(1, rat(2))) == L(0) + G2(0));
    CHECK_THROWS_AS(t.apply(L(3)), domain_insufficiency);

    // grid mismatches are config errors
    CHECK_THROWS_AS(MapTable(AlgebraConfig{1, true}, {{L(1), G2(2)}}), config_mismatch);
}

TEST_CASE("ad_matrix on pinned windows") {
    Window a1(kR, {BasisSymbol::L(1)});
    Matrix m = ad_matrix(kR, L(0), a1, a1);
    CHECK(m.rows == 1);
    CHECK(m.at(0, 0) == rat(1));  // [L_1, L_0] = L_1

    Window a0(kR, {BasisSymbol::L(0)});
    m = ad_matrix(kR, L(0), a0, a0);
    CHECK(m.at(0, 0) == rat(0));

    Window ans(kRless, {BasisSymbol::L(2)});
    Window tgt(kRless, {BasisSymbol::L(2), BasisSymbol::L(3)});
    m = ad_matrix(kRless, L(1) + L(0), ans, tgt);
    CHECK(m.at(tgt.index.at(BasisSymbol::L(2)), 0) == rat(2));
    CHECK(m.at(tgt.index.at(BasisSymbol::L(3)), 0) == rat(1));

    // escape: [L_2, L_1] = L_3 does not fit in {L(2)}
    CHECK_THROWS_AS(ad_matrix(kRless, L(1), ans, ans), window_escape);
}

TEST_CASE("inner maps satisfy the graded Leibniz rule") {
    MapTable d = ad_table(kR, L(1), 5);
    CHECK(leibniz_violations(d, 2).empty());

    // identity map is not a derivation
    std::vector<std::pair<Element, Element>> ident;
    for (const auto& s : symbols_in_radius(kR, 5))
        ident.emplace_back(Element::single(s), Element::single(s));
    CHECK_FALSE(leibniz_violations(MapTable(kR, ident, Parity::even), 2).empty());

    // zero map is
    std::vector<std::pair<Element, Element>> zero;
    for (const auto& s : symbols_in_radius(kR, 5))
        zero.emplace_back(Element::single(s), Element::zero());
    CHECK(leibniz_violations(MapTable(kR, zero, Parity::even), 2).empty());

    // mixed-parity inner maps are split automatically
    MapTable mixed = ad_table(kR, L(1) + G2(2), 5);
    CHECK(leibniz_violations(mixed, 2).empty());

    // insufficient domain names the missing symbols
    MapTable small = ad_table(kR, L(1), 2);
    CHECK_THROWS_AS(leibniz_violations(small, 2), domain_insufficiency);
}

TEST_CASE("random inner maps are derivations") {
    testing::Rng rng(314);
    for (int it = 0; it < 10; ++it) {
        Element u = rng.element(kR, 2);
        CHECK(leibniz_violations(ad_table(kR, u, 6), 2).empty());
    }
}

TEST_CASE("inner witness solving") {
    Window ans = Window::radius(kR, 5);
    WitnessReport rep = inner_witness(MapTable(kR, {{L(0), L(3, rat(2))}}), ans);
    REQUIRE(rep.found());
    CHECK(rep.witness == L(3, rat(2, 3)));  // [L_3, L_0] = 3 L_3
    CHECK(rep.residual.is_zero());

    rep = inner_witness(MapTable(kR, {{L(0), Element::zero()}}), ans);
    REQUIRE(rep.found());
    CHECK(rep.witness.is_zero());
}

TEST_CASE("central target is unreachable, with a degree-block certificate") {
    for (std::int64_t radius : {5, 10}) {
        WitnessReport rep =
            inner_witness(MapTable(kR, {{L(0), Element::single(BasisSymbol::C())}}),
                          Window::radius(kR, radius));
        CHECK(rep.status == WitnessReport::Status::none_in_window);
        bool found_block = false;
        for (const auto& b : rep.blocks)
            if (!b.solvable) {
                found_block = true;
                CHECK(b.y_degree2 == 0);
                CHECK(b.required == Element::single(BasisSymbol::C()));
                CHECK(b.rank == 0);  // the whole degree-0 column is zero
            }
        CHECK(found_block);
    }
}

TEST_CASE("a miss always carries a nonzero residual") {
    // first entry's output is zero; the unreachable value sits in the second
    Window ans = Window::radius(kR, 4);
    MapTable d(kR, {{L(2), Element::zero()},
                    {L(0), Element::single(BasisSymbol::C())}});
    WitnessReport rep = inner_witness(d, ans);
    CHECK(rep.status == WitnessReport::Status::none_in_window);
    CHECK_FALSE(rep.residual.is_zero());

    // mixed-degree input takes the stacked path; same contract
    MapTable d2(kR, {{L(1) + L(0), Element::zero()},
                     {L(0), Element::single(BasisSymbol::C())}});
    WitnessReport rep2 = inner_witness(d2, ans);
    CHECK(rep2.status == WitnessReport::Status::none_in_window);
    CHECK_FALSE(rep2.residual.is_zero());
}

TEST_CASE("single-point witness decisions") {
    Window ans = Window::radius(kR, 6);
    WitnessReport rep = local_der_at(kR, L(0), L(5, rat(3)), ans);
    REQUIRE(rep.found());
    CHECK(rep.witness == L(5, rat(3, 5)));

    rep = local_der_at(kR, L(0), L(0), ans);
    CHECK(rep.status == WitnessReport::Status::none_in_window);

    CHECK(local_der_at(kR, L(2) + G2(0), Element::zero(), ans).found());
}

TEST_CASE("zero-point queries are out of scope, not window misses") {
    Window ans = Window::radius(kR, 3);
    WitnessReport rep = local_der_at(kR, Element::zero(), L(1), ans);
    CHECK(rep.status == WitnessReport::Status::out_of_scope);
    CHECK(local_der_at(kR, Element::zero(), Element::zero(), ans).found());
}

TEST_CASE("image intersection: single probe L(0)") {
    Window tgt = Window::radius(kRless, 3);
    Window ans = Window::radius(kRless, 3);
    Subspace s = image_intersection(kRless, {L(0)}, ans, tgt);
    std::vector<Element> want;
    for (const auto& sym : tgt.symbols)
        if (sym.degree2() != 0) want.push_back(Element::single(sym));
    CHECK(s == Subspace::span(tgt, want));
}

TEST_CASE("image intersection over the L-probe family (computed ground truth)") {
    // Expected values frozen from an independent exact implementation.
    // Note the intersection is strictly larger than span{L(1), G(1)}: e.g.
    // [2 G(1) + 4x G(0), L(1) + x L(0)] = G(2) for every x, so every G(k),
    // k >= 1, in the target lies in each probe image.
    std::vector<Element> probes;
    for (long x : {1, 2, 3, 5, 7}) probes.push_back(L(1) + L(0, rat(x)));
    Window tgt = Window::radius(kRless, 4);
    Window ans = Window::radius(kRless, 5);  // padded by the probe degree
    Subspace s = image_intersection(kRless, probes, ans, tgt);

    std::vector<Element> want = {L(1), G2(2), G2(4), G2(6), G2(8)};
    CHECK(s == Subspace::span(tgt, want));

    // sampling stability: three more probe values leave it unchanged
    for (long x : {11, 13, 17}) probes.push_back(L(1) + L(0, rat(x)));
    CHECK(image_intersection(kRless, probes, ans, tgt) == s);

    // the closed-form witness behind the extra vectors
    for (long x : {1, 2, 3, 5, 7}) {
        Element y = G2(2, rat(2)) + G2(0, rat(4 * x));
        CHECK(bracket(kRless, y, L(1) + L(0, rat(x))) == G2(4));
    }
}

TEST_CASE("image intersection over the G-probe family (computed ground truth)") {
    std::vector<Element> probes;
    for (long x : {1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
        probes.push_back(G2(2) + G2(0, rat(x)));
    Window tgt = Window::radius(kRless, 4);
    Window ans = Window::radius(kRless, 5);
    Subspace s = image_intersection(kRless, probes, ans, tgt);
    CHECK(s == Subspace::span(tgt, {G2(2), G2(4)}));

    // [-2 L(1) - x L(0), G(1) + x G(0)] = G(2) pins the second vector
    for (long x : {1, 2, 3}) {
        Element y = L(1, rat(-2)) + L(0, rat(-x));
        CHECK(bracket(kRless, y, G2(2) + G2(0, rat(x))) == G2(4));
    }
}

TEST_CASE("image intersection is monotone in the probe list") {
    testing::Rng rng(271);
    Window tgt = Window::radius(kRless, 3);
    Window ans = Window::radius(kRless, 4);
    std::vector<Element> probes;
    Subspace prev = Subspace::full(tgt);
    for (int it = 0; it < 4; ++it) {
        Element p = rng.element(kRless, 1);
        if (p.is_zero()) continue;
        probes.push_back(p);
        Subspace cur = image_intersection(kRless, probes, ans, tgt);
        CHECK(intersect(prev, cur) == cur);  // cur subset of prev
        prev = cur;
    }
}

TEST_CASE("membership agrees with the single-point decision") {
    testing::Rng rng(272);
    Window tgt = Window::radius(kRless, 3);
    Window ans = Window::radius(kRless, 4);
    for (int it = 0; it < 10; ++it) {
        Element p = rng.element(kRless, 1);
        if (p.is_zero()) continue;
        Window enlarged = reachable_target(kRless, {p}, ans, tgt.symbols);
        Subspace img = column_image(ad_matrix(kRless, p, ans, enlarged), enlarged);
        Element v = rng.element(kRless, 2);
        bool in_image = member(img, v).is_member;
        CHECK(in_image == local_der_at(kRless, p, v, ans).found());
    }
}

TEST_CASE("normalization pipeline inverts known inner maps") {
    // probe window radius 4, ansatz radius 8
    Window ans = Window::radius(kRless, 8);

    Element y0 = L(2) + G2(2);
    NormalizationReport rep = recover_inner_witness(ad_table(kRless, y0, 4), ans);
    CHECK(rep.status == NormalizationReport::Status::ok);
    CHECK(rep.all_zero);
    CHECK(rep.witness == y0);

    std::vector<std::pair<Element, Element>> zeros;
    for (const auto& s : symbols_in_radius(kRless, 4))
        zeros.emplace_back(Element::single(s), Element::zero());
    rep = recover_inner_witness(MapTable(kRless, zeros), ans);
    CHECK(rep.all_zero);
    CHECK(rep.witness.is_zero());

    rep = recover_inner_witness(ad_table(kRless, L(-3, rat(5)), 4), ans);
    CHECK(rep.all_zero);
    CHECK(rep.witness == L(-3, rat(5)));
}

TEST_CASE("pipeline recovers degree-zero components through the corrections") {
    Window ans = Window::radius(kRless, 8);
    Element y0 = L(0, rat(3)) + G2(0, rat(-2)) + L(4, rat(1, 2));
    NormalizationReport rep = recover_inner_witness(ad_table(kRless, y0, 4), ans);
    CHECK(rep.all_zero);
    CHECK(rep.witness == y0);
}

TEST_CASE("pipeline round trips on random inner maps, both grids") {
    for (const auto& cfg : {kRless, kNSless}) {
        testing::Rng rng(cfg.eps2 == 0 ? 500 : 501);
        Window ans = Window::radius(cfg, 8);
        for (int it = 0; it < 8; ++it) {
            Element y0 = rng.element(cfg, 4);
            NormalizationReport rep = recover_inner_witness(ad_table(cfg, y0, 4), ans);
            CHECK(rep.status == NormalizationReport::Status::ok);
            CHECK(rep.all_zero);
            CHECK(rep.witness == y0);
        }
    }
}

TEST_CASE("pipeline reports a shape violation instead of absorbing it") {
    // a table that is zero except L(1) |-> L(2): after the L(0) step the
    // value at L(1) is not in span{L(1), G(1)}
    std::vector<std::pair<Element, Element>> entries;
    for (const auto& s : symbols_in_radius(kRless, 2))
        entries.emplace_back(Element::single(s),
                             s == BasisSymbol::L(1) ? L(2) : Element::zero());
    NormalizationReport rep =
        recover_inner_witness(MapTable(kRless, entries), Window::radius(kRless, 6));
    CHECK(rep.status == NormalizationReport::Status::shape_violation);
    CHECK(rep.shape_offender == L(2));
}

TEST_CASE("witness soundness on random inner maps") {
    testing::Rng rng(64);
    Window ans = Window::radius(kRless, 7);
    for (int it = 0; it < 6; ++it) {
        Element y0 = rng.element(kRless, 3);
        MapTable d = ad_table(kRless, y0, 3);
        WitnessReport rep = inner_witness(d, ans);
        REQUIRE(rep.found());
        for (const auto& [in, out] : d.entries)
            CHECK(bracket(kRless, rep.witness, in) == out);
    }
}

TEST_CASE("inner witness recovers the generator on the centerless algebra") {
    // with probe inputs covering {L(0), L(1)} and the window symbols, the
    // stacked system has trivial kernel ([y, L(0)] = 0 pins y to degree 0,
    // and [., L(1)] kills that block), so the canonical solution is y0
    testing::Rng rng(65);
    Window ans = Window::radius(kRless, 6);
    for (int it = 0; it < 6; ++it) {
        Element y0 = rng.element(kRless, 2);
        MapTable d = ad_table(kRless, y0, 2);
        WitnessReport rep = inner_witness(d, ans);
        REQUIRE(rep.found());
        CHECK(rep.witness == y0);
        NormalizationReport pipe = recover_inner_witness(d, ans);
        CHECK(pipe.witness == y0);
    }
}
