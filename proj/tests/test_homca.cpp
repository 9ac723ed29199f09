#include "doctest.h"

#include "datamata/homca.hpp"
#include "datamata/wsts.hpp"
#include "generators.hpp"

#include <functional>
#include <random>

using namespace datamata;
using namespace testgen;

namespace {

Homca base_machine(unsigned level)
{
    Homca m;
    m.level = level;
    m.states = {"q0"};
    m.alphabet = {"a", "b"};
    m.multiset_alphabet = {"x", "y"};
    m.initial = 0;
    return m;
}

Homca random_homca(std::mt19937& rng, unsigned level, bool prime)
{
    Homca m = base_machine(level);
    unsigned n_states = 2 + rng() % 2;
    m.states = make_names("q", n_states);
    m.accepting.insert(rng() % n_states);
    m.prime = prime;
    m.weak = rng() % 2 == 0;
    unsigned n_trans = 4 + rng() % 5;
    for (unsigned i = 0; i < n_trans; ++i) {
        HomcaTransition t;
        t.from = rng() % n_states;
        t.to = rng() % n_states;
        if (rng() % 4 == 0)
            t.input = std::nullopt;
        else
            t.input = m.alphabet[rng() % m.alphabet.size()];
        switch (rng() % 6) {
        case 0: t.op = op_make(1 + rng() % level); break;
        case 1: t.op = op_inc(m.multiset_alphabet[rng() % 2]); break;
        case 2: t.op = op_dec(m.multiset_alphabet[rng() % 2]); break;
        case 3:
            t.op = level > 1 ? op_store(1 + rng() % (level - 1))
                             : op_make(1);
            break;
        case 4:
            t.op = level > 1 ? op_load(1 + rng() % (level - 1)) : op_nop();
            break;
        default: t.op = op_nop(); break;
        }
        m.delta.push_back(std::move(t));
    }
    return m;
}

/// Small epsilon-free restricted machine whose ndcma translation is
/// strong-desugarable.
Homca random_homca_instance_for_desugar(std::mt19937& rng)
{
    Homca m = random_homca(rng, 1 + rng() % 2, true);
    for (HomcaTransition& t : m.delta)
        if (!t.input)
            t.input = m.alphabet[rng() % m.alphabet.size()];
    return m;
}

std::vector<std::vector<std::string>> words_up_to(unsigned max_len,
                                                  unsigned n_letters)
{
    std::vector<std::vector<std::string>> out{{}};
    std::vector<std::vector<std::string>> layer{{}};
    for (unsigned len = 1; len <= max_len; ++len) {
        std::vector<std::vector<std::string>> next;
        for (const auto& w : layer)
            for (unsigned l = 0; l < n_letters; ++l) {
                auto w2 = w;
                w2.push_back(std::string(1, static_cast<char>('a' + l)));
                next.push_back(w2);
                out.push_back(w2);
            }
        layer = std::move(next);
    }
    return out;
}

} // namespace

TEST_CASE("a fresh empty multiset is hereditarily empty")
{
    // level 1, new then accept
    Homca m = base_machine(1);
    m.states = {"q0", "q1"};
    m.accepting = {1};
    m.delta.push_back(HomcaTransition{0, "a", op_make(1), 1});
    CHECK(homca_accepts(m, {"a"}));
    CHECK_FALSE(homca_accepts(m, {}));
    CHECK_FALSE(homca_accepts(m, {"b"}));
}

TEST_CASE("hereditary emptiness separates strong from weak acceptance")
{
    Homca m = base_machine(1);
    m.states = {"q0", "q1", "q2"};
    m.accepting = {2};
    m.delta.push_back(HomcaTransition{0, "a", op_make(1), 1});
    m.delta.push_back(HomcaTransition{1, "a", op_inc("x"), 2});
    CHECK_FALSE(homca_accepts(m, {"a", "a"}));
    Homca weak = m;
    weak.weak = true;
    CHECK(homca_accepts(weak, {"a", "a"}));
}

TEST_CASE("level-2 store and load round a multiset through the upper slot")
{
    Homca m = base_machine(2);
    m.states = make_names("q", 8);
    m.accepting = {7};
    unsigned s = 0;
    auto step = [&](std::optional<std::string> in, HomcaOp op) {
        m.delta.push_back(HomcaTransition{s, in, op, s + 1});
        ++s;
    };
    step("a", op_make(2));
    step("a", op_make(1));
    step("a", op_inc("x"));
    step("a", op_store(1));
    step("a", op_load(1));
    step("a", op_dec("x"));
    step("a", op_store(1));
    CHECK(homca_accepts(m, std::vector<std::string>(7, "a")));
    CHECK_FALSE(homca_accepts(m, std::vector<std::string>(6, "a")));
}

TEST_CASE("load requires the lower slots to be undefined")
{
    Homca m = base_machine(2);
    m.states = make_names("q", 6);
    m.accepting = {5};
    m.delta.push_back(HomcaTransition{0, "a", op_make(2), 1});
    m.delta.push_back(HomcaTransition{1, "a", op_make(1), 2});
    m.delta.push_back(HomcaTransition{2, "a", op_store(1), 3});
    m.delta.push_back(HomcaTransition{3, "a", op_make(1), 4});
    // m_1 is defined, so load_1 must be disabled here
    m.delta.push_back(HomcaTransition{4, "a", op_load(1), 5});
    CHECK_FALSE(homca_accepts(m, std::vector<std::string>(5, "a")));
}

TEST_CASE("level-2 shuffle: two stored singletons drained one by one")
{
    Homca m = base_machine(2);
    m.states = make_names("q", 14);
    m.accepting = {13};
    unsigned s = 0;
    auto step = [&](HomcaOp op) {
        m.delta.push_back(HomcaTransition{s, "a", op, s + 1});
        ++s;
    };
    step(op_make(2));
    step(op_make(1));
    step(op_inc("x"));
    step(op_store(1));
    step(op_make(1));
    step(op_inc("x"));
    step(op_store(1));
    // two load-dec-store phases
    step(op_load(1));
    step(op_dec("x"));
    step(op_store(1));
    step(op_load(1));
    step(op_dec("x"));
    step(op_store(1));
    CHECK(homca_accepts(m, std::vector<std::string>(13, "a")));
}

TEST_CASE("restricted variant enforces the definedness side-conditions")
{
    // new_1 before new_2 is fine for the base variant, not the restricted
    Homca m = base_machine(2);
    m.states = {"q0", "q1", "q2"};
    m.accepting = {2};
    m.delta.push_back(HomcaTransition{0, "a", op_make(1), 1});
    m.delta.push_back(HomcaTransition{1, "a", op_make(2), 2});
    CHECK(homca_accepts(m, {"a", "a"}));
    Homca p = m;
    p.prime = true;
    CHECK_FALSE(homca_accepts(p, {"a", "a"}));
    // the other order satisfies them
    Homca q = base_machine(2);
    q.prime = true;
    q.states = {"q0", "q1", "q2"};
    q.accepting = {2};
    q.delta.push_back(HomcaTransition{0, "a", op_make(2), 1});
    q.delta.push_back(HomcaTransition{1, "a", op_make(1), 2});
    CHECK(homca_accepts(q, {"a", "a"}));
}

TEST_CASE("restricted runs keep the defined-slot cut")
{
    std::mt19937 rng(431);
    auto words = words_up_to(3, 2);
    for (int round = 0; round < 40; ++round) {
        Homca m = random_homca(rng, 1 + rng() % 3, true);
        for (const auto& w : words)
            CHECK_NOTHROW(homca_accepts(m, w));
    }
}

TEST_CASE("prime-to-base translation preserves acceptance")
{
    std::mt19937 rng(433);
    auto words = words_up_to(4, 1);
    for (int round = 0; round < 25; ++round) {
        Homca m = random_homca(rng, 1 + rng() % 3, true);
        Homca base = homca_prime_to_homca(m);
        CHECK_FALSE(base.prime);
        CHECK(base.weak == m.weak);
        for (const auto& w : words) {
            CAPTURE(round);
            CHECK(homca_accepts(m, w) == homca_accepts(base, w));
        }
    }
}

TEST_CASE("prime-to-base keeps epsilon acceptance")
{
    Homca m = base_machine(2);
    m.prime = true;
    m.accepting = {0};
    Homca base = homca_prime_to_homca(m);
    CHECK(homca_accepts(base, {}));
}

TEST_CASE("base-to-prime translation preserves acceptance at small levels")
{
    std::mt19937 rng(439);
    auto words = words_up_to(4, 1);
    for (int round = 0; round < 20; ++round) {
        unsigned level = 1 + rng() % 2;
        Homca m = random_homca(rng, level, false);
        Homca p = homca_to_homca_prime(m);
        CHECK(p.prime);
        for (const auto& w : words) {
            CAPTURE(round);
            CAPTURE(level);
            CHECK(homca_accepts(m, w) == homca_accepts(p, w));
        }
    }
}

TEST_CASE("base-to-prime translation at level 3 with ghost copying")
{
    std::mt19937 rng(443);
    auto words = words_up_to(4, 1);
    for (int round = 0; round < 12; ++round) {
        Homca m = random_homca(rng, 3, false);
        Homca p = homca_to_homca_prime(m);
        for (const auto& w : words) {
            CAPTURE(round);
            CHECK(homca_accepts(m, w) == homca_accepts(p, w));
        }
    }
}

TEST_CASE("level-3 store under a held bottom multiset copies exactly")
{
    // new_3 new_2 new_1 inc_x store_2: the restricted machine must move
    // the held {x} under a ghost and keep its content intact
    Homca m = base_machine(3);
    m.states = make_names("q", 10);
    m.accepting = {9};
    unsigned s = 0;
    auto step = [&](HomcaOp op) {
        m.delta.push_back(HomcaTransition{s, "a", op, s + 1});
        ++s;
    };
    step(op_make(3));
    step(op_make(2));
    step(op_make(1));
    step(op_inc("x"));
    step(op_store(2)); // m_1 = {x} still held
    step(op_make(2));
    step(op_store(1));
    step(op_load(1));
    step(op_dec("x"));
    CHECK(homca_accepts(m, std::vector<std::string>(9, "a")));

    Homca p = homca_to_homca_prime(m);
    CHECK(homca_accepts(p, std::vector<std::string>(9, "a")));
    CHECK_FALSE(homca_accepts(p, std::vector<std::string>(8, "a")));
}

TEST_CASE("a truncated copy phase is rejected by strong acceptance")
{
    // machine that holds {x,x} in m_1 while storing m_2; dropping an x in
    // the copy makes hereditary emptiness fail at the end
    Homca m = base_machine(3);
    m.states = make_names("q", 11);
    m.accepting = {10};
    unsigned s = 0;
    auto step = [&](HomcaOp op) {
        m.delta.push_back(HomcaTransition{s, "a", op, s + 1});
        ++s;
    };
    step(op_make(3));
    step(op_make(2));
    step(op_make(1));
    step(op_inc("x"));
    step(op_inc("x"));
    step(op_store(2));
    step(op_dec("x"));
    step(op_dec("x"));
    step(op_make(2));
    step(op_store(1));
    Homca p = homca_to_homca_prime(m);
    std::vector<std::string> word(10, "a");
    REQUIRE(homca_accepts(m, word));
    CHECK(homca_accepts(p, word));

    // fault injection: disable one copy-loop round by removing the inc
    // half, so one x can only be lost
    Homca lossy = p;
    std::erase_if(lossy.delta, [&](const HomcaTransition& t) {
        return !t.input && t.op.kind == HomcaOpKind::inc &&
               t.op.letter == "x";
    });
    CHECK_FALSE(homca_accepts(lossy, word));
}

TEST_CASE("ndcma translation: the two-place query string language")
{
    Cma weak = eliminate_silent(two_place_query_cma(true));
    Ndcma n = ndcma_from_cma(weak);
    Homca h = ndcma_to_homca_prime(n);
    CHECK(h.weak);
    // the witness has 8 positions, all labelled a
    CHECK(homca_accepts(h, std::vector<std::string>(8, "a")));
    // seven a's cannot reach the accepting check
    CHECK_FALSE(homca_accepts(h, std::vector<std::string>(7, "a")));
}

namespace {

/// Oracle: does some flat data word with this string projection get
/// accepted? Enumerates set partitions of the positions.
bool str_member_flat(const Cma& a, const std::vector<std::string>& str)
{
    std::vector<unsigned> assign(str.size(), 0);
    std::function<bool(std::size_t, unsigned)> go = [&](std::size_t pos,
                                                        unsigned used) {
        if (pos == str.size()) {
            DataWord w;
            w.alphabet = a.alphabet;
            w.universe = DataUniverse::make(1);
            std::vector<DataValue> vals;
            for (unsigned i = 0; i < used; ++i)
                vals.push_back(w.universe->fresh());
            for (std::size_t i = 0; i < str.size(); ++i)
                w.entries.push_back(DataWord::Entry{str[i], vals[assign[i]]});
            return cma_accepts(a, w);
        }
        for (unsigned v = 0; v <= used && v < str.size(); ++v) {
            assign[pos] = v;
            if (go(pos + 1, std::max(used, v + 1)))
                return true;
        }
        return false;
    };
    return go(0, 0);
}

} // namespace

TEST_CASE("ndcma translation agrees with assignment-search membership")
{
    std::mt19937 rng(449);
    auto words = words_up_to(4, 2);
    for (int round = 0; round < 15; ++round) {
        Cma c = eliminate_silent(random_cma(rng, 3, 2, true, false));
        Ndcma n = ndcma_from_cma(c);
        Homca h = ndcma_to_homca_prime(n);
        for (const auto& w : words) {
            CAPTURE(round);
            CHECK(homca_accepts(h, w) == str_member_flat(c, w));
        }
    }
}

TEST_CASE("ndcma translation handles strong local acceptance")
{
    std::mt19937 rng(457);
    auto words = words_up_to(4, 2);
    for (int round = 0; round < 10; ++round) {
        Cma c = eliminate_silent(random_cma(rng, 3, 2, false, false));
        if (c.is_weak()) {
            // force a locally rejecting state, keeping F_G inside F_L
            State victim = 2;
            c.globally_accepting.erase(victim);
            if (c.globally_accepting.empty())
                c.globally_accepting.insert(0);
            c.locally_accepting.erase(victim);
        }
        REQUIRE_FALSE(c.is_weak());
        Ndcma n = ndcma_from_cma(c);
        Homca h = ndcma_to_homca_prime(n);
        CHECK_FALSE(h.weak);
        for (const auto& w : words) {
            CAPTURE(round);
            CHECK(homca_accepts(h, w) == str_member_flat(c, w));
        }
    }
}

TEST_CASE("empty ndcma language stays empty through the translation")
{
    Ndcma n;
    n.level = 2;
    n.states = {"q0", "gone"};
    n.alphabet = {"a"};
    n.initial = 0;
    n.locally_accepting = {0, 1};
    n.globally_accepting = {1}; // unreachable: no transitions
    Homca h = ndcma_to_homca_prime(n);
    for (unsigned len = 0; len <= 4; ++len)
        CHECK_FALSE(homca_accepts(h, std::vector<std::string>(len, "a")));
}

TEST_CASE("prime machines translate to sugared ndcma and back to strings")
{
    std::mt19937 rng(461);
    auto words = words_up_to(3, 2);
    for (int round = 0; round < 15; ++round) {
        // epsilon-free prime machines keep the string projection exact
        Homca m = random_homca(rng, 1 + rng() % 2, true);
        for (HomcaTransition& t : m.delta)
            if (!t.input)
                t.input = m.alphabet[rng() % m.alphabet.size()];
        SugaredNdcma s = homca_prime_to_ndcma(m);
        Ndcma d = desugar(s);
        for (const auto& w : words) {
            CAPTURE(round);
            CHECK(homca_accepts(m, w) == ndcma_str_member(d, w));
        }
    }
}

TEST_CASE("translation-generated sugared machines desugar faithfully")
{
    // oracle: the direct sugared interpreter on data words
    std::mt19937 rng(459);
    for (int round = 0; round < 8; ++round) {
        Homca m = random_homca_instance_for_desugar(rng);
        SugaredNdcma s = homca_prime_to_ndcma(m);
        Ndcma d = desugar(s);
        for (int i = 0; i < 12; ++i) {
            DataWord w =
                random_nested_word(rng, s.alphabet, s.level, 4, 4);
            CAPTURE(round);
            CHECK(sugared_accepts(s, w) == ndcma_accepts(d, w));
        }
    }
}

TEST_CASE("epsilon transitions surface as budgeted silent reads")
{
    // one epsilon op between two letters
    Homca m = base_machine(2);
    m.prime = true;
    m.states = make_names("q", 4);
    m.accepting = {3};
    m.delta.push_back(HomcaTransition{0, "a", op_make(2), 1});
    m.delta.push_back(HomcaTransition{1, std::nullopt, op_make(1), 2});
    m.delta.push_back(HomcaTransition{2, "b", op_store(1), 3});
    REQUIRE(homca_accepts(m, {"a", "b"}));

    SugaredNdcma s = homca_prime_to_ndcma(m);
    Ndcma d = desugar(s);
    CHECK(ndcma_str_member(d, {"a", "b"}, std::string(kSilentLetter), 4));
    CHECK_FALSE(ndcma_str_member(d, {"a", "b"}, std::string(kSilentLetter), 0));
    CHECK_FALSE(ndcma_str_member(d, {"b", "a"}, std::string(kSilentLetter), 4));
}

TEST_CASE("round trip: ndcma to prime homca to sugared ndcma, level 2")
{
    std::mt19937 rng(463);
    auto words = words_up_to(2, 1);
    for (int round = 0; round < 4; ++round) {
        Ndcma n = random_ndcma(rng, 2, 2, 1, rng() % 2 == 0);
        Homca h = ndcma_to_homca_prime(n);
        Ndcma back = desugar(homca_prime_to_ndcma(h));
        for (const auto& w : words) {
            bool middle = homca_accepts(h, w);
            CAPTURE(round);
            CHECK(ndcma_str_member(n, w) == middle);
            CHECK(middle ==
                  ndcma_str_member(back, w, std::string(kSilentLetter), 60));
        }
    }
}
