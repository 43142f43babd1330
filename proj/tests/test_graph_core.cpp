#include <catch2/catch_amalgamated.hpp>

#include "dpoca/graph.hpp"
#include "dpoca/morphism.hpp"
#include "dpoca/universe.hpp"
#include "test_helpers.hpp"

using namespace dpoca;
using namespace dpoca::testing;

TEST_CASE("typed graph validation") {
    auto tg = untyped();
    CHECK_NOTHROW(TypedGraph(tg, {0, 0}, {{0, 1, 0}}));
    CHECK_THROWS(TypedGraph(tg, {0}, {{0, 1, 0}}));  // endpoint out of range
    CHECK_THROWS(TypedGraph(tg, {0, 1}, {}));        // undeclared node type
    CHECK_THROWS(TypedGraph(tg, {0}, {{0, 0, 3}}));  // undeclared edge type

    auto typed = std::make_shared<TypeGraph>();
    typed->node_types = {"a", "b"};
    typed->edge_types = {{"ab", 0, 1}};
    typed->validate();
    CHECK_NOTHROW(TypedGraph(typed, {0, 1}, {{0, 1, 0}}));
    CHECK_THROWS(TypedGraph(typed, {0, 1}, {{1, 0, 0}})); // endpoint types wrong
}

TEST_CASE("type graph validation") {
    TypeGraph tg;
    tg.node_types = {"a", "a"};
    CHECK_THROWS(tg.validate());
    tg.node_types = {"a"};
    tg.edge_types = {{"e", 0, 5}};
    CHECK_THROWS(tg.validate());
}

TEST_CASE("morphism validity and composition") {
    TypedGraph one = nodes(1), two = nodes(2);
    GraphMorphism id1 = GraphMorphism::identity(one);

    SECTION("identity composes to identity") {
        CHECK(compose(id1, id1) == id1);
    }
    SECTION("composition follows the maps") {
        // collapse {1,2} -> {12}, then include {12} into {12,3}
        GraphMorphism collapse = node_map(two, one, {0, 0});
        GraphMorphism incl = node_map(one, two, {0});
        GraphMorphism comp = compose(collapse, incl);
        CHECK(comp.node_map == std::vector<NodeId>{0, 0});
    }
    SECTION("mono composed with mono is mono") {
        GraphMorphism incl = node_map(one, two, {1});
        GraphMorphism incl2 = node_map(two, nodes(3), {0, 2});
        CHECK(compose(incl, incl2).is_mono());
    }
    SECTION("domain mismatch throws") {
        GraphMorphism incl = node_map(one, two, {1});
        CHECK_THROWS(compose(incl, incl));
    }
    SECTION("structure preservation enforced") {
        TypedGraph loop = graph(1, {{0, 0}});
        TypedGraph arrow = graph(2, {{0, 1}});
        CHECK_THROWS(GraphMorphism(loop, arrow, {0}, {0}));
        // collapsing the arrow onto the loop is fine
        CHECK_NOTHROW(GraphMorphism(arrow, loop, {0, 0}, {0}));
    }
}

TEST_CASE("classify_morphism") {
    TypedGraph one = nodes(1), two = nodes(2);
    auto c = classify_morphism(GraphMorphism::identity(two));
    CHECK(c.mono);
    CHECK(c.epi);
    CHECK(c.iso);

    c = classify_morphism(node_map(one, two, {0}));
    CHECK(c.mono);
    CHECK_FALSE(c.epi);

    c = classify_morphism(node_map(two, one, {0, 0}));
    CHECK(c.epi);
    CHECK_FALSE(c.mono);
    CHECK_FALSE(c.iso);
}

TEST_CASE("enumerate_morphisms counts") {
    TypedGraph one = nodes(1), two = nodes(2);
    CHECK(enumerate_morphisms(one, two).size() == 2);
    CHECK(enumerate_morphisms(one, one).size() == 1);
    CHECK(enumerate_morphisms(two, two, MorphismRestriction::All).size() == 4);
    CHECK(enumerate_morphisms(two, two, MorphismRestriction::Mono).size() == 2);

    SECTION("agrees with brute force on structured graphs") {
        std::vector<TypedGraph> gs = {
            nodes(0), nodes(2), graph(2, {{0, 1}}), graph(1, {{0, 0}}),
            graph(3, {{0, 1}, {1, 2}}), graph(2, {{0, 1}, {0, 1}}),
        };
        for (const auto& a : gs)
            for (const auto& b : gs) {
                CHECK(static_cast<int>(enumerate_morphisms(a, b).size()) ==
                      brute_force_morphism_count(a, b, false));
                CHECK(static_cast<int>(enumerate_morphisms(a, b, MorphismRestriction::Mono).size()) ==
                      brute_force_morphism_count(a, b, true));
            }
    }
    SECTION("no duplicates") {
        auto ms = enumerate_morphisms(graph(2, {{0, 1}}), graph(3, {{0, 1}, {1, 2}, {0, 1}}));
        for (size_t i = 0; i < ms.size(); ++i)
            for (size_t j = i + 1; j < ms.size(); ++j)
                CHECK_FALSE(ms[i] == ms[j]);
    }
}

TEST_CASE("commuting extensions") {
    TypedGraph one = nodes(1), three = nodes(3);
    // a : {x} -> {x,y,z}, p : {x} -> {g1,g2,g3}; extensions q with q o a = p.
    GraphMorphism a = node_map(one, three, {0});
    GraphMorphism p = node_map(one, three, {1});
    auto qs = enumerate_commuting_extensions(a, p, MorphismRestriction::Mono);
    CHECK(qs.size() == 2); // q(x)=g2 forced; (y,z) -> remaining two nodes, 2 ways
    for (const auto& q : qs) CHECK(compose(a, q) == p);
}

TEST_CASE("isomorphism check") {
    CHECK(find_isomorphism(nodes(2), nodes(2)).has_value());
    CHECK(are_isomorphic(nodes(0), nodes(0)));
    auto self = graph(3, {{0, 1}, {1, 2}});
    auto iso = find_isomorphism(self, self);
    REQUIRE(iso.has_value());
    CHECK(iso->is_iso());
    // path of length 2 vs two disjoint edges: same node/edge counts, not iso
    CHECK_FALSE(are_isomorphic(graph(4, {{0, 1}, {1, 2}}), graph(4, {{0, 1}, {2, 3}})));
}

TEST_CASE("canonical keys identify iso classes") {
    auto p1 = graph(3, {{0, 1}, {1, 2}});
    auto p2 = graph(3, {{2, 0}, {0, 1}}); // relabeled path
    CHECK(p1.canonical_key() == p2.canonical_key());
    CHECK(p1.canonical_key() != graph(3, {{0, 1}, {2, 1}}).canonical_key());
    // parallel edges are distinguished from single ones
    CHECK(graph(2, {{0, 1}, {0, 1}}).canonical_key() != graph(2, {{0, 1}}).canonical_key());
}

TEST_CASE("graph universe enumeration") {
    // Discrete untyped graphs: exactly one class per node count.
    auto u = enumerate_graph_universe(untyped(), {2, 0});
    CHECK(u.size() == 3);

    // 2 nodes, <=1 edge: {}, {.}, {..}, loop, 2 nodes+loop, edge = 6 classes.
    u = enumerate_graph_universe(untyped(), {2, 1});
    CHECK(u.size() == 6);

    SECTION("universe is duplicate-free and within bounds") {
        auto u33 = enumerate_graph_universe(untyped(), {3, 3});
        for (size_t i = 0; i < u33.size(); ++i) {
            CHECK(u33[i].node_count() <= 3);
            CHECK(u33[i].edge_count() <= 3);
            for (size_t j = i + 1; j < u33.size(); ++j)
                CHECK_FALSE(are_isomorphic(u33[i], u33[j]));
        }
        // every 2-node 2-edge graph is iso to some member
        auto u22 = enumerate_graph_universe(untyped(), {2, 2});
        for (const auto& g : u22) {
            bool found = false;
            for (const auto& h : u33)
                if (are_isomorphic(g, h)) found = true;
            CHECK(found);
        }
    }
}
