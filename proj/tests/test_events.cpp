#include <doctest.h>

#include "krec/events.hpp"
#include "krec/theory.hpp"

using namespace krec;

TEST_CASE("event letters") {
    CHECK(event_letter(EventKind::A) == 'A');
    CHECK(event_letter(EventKind::B) == 'B');
    CHECK(event_letter(EventKind::C) == 'C');
    CHECK(event_letter(EventKind::D) == 'D');
    CHECK(event_letter(EventKind::H) == 'H');
}

TEST_CASE("intra-sequence repeat: smallest witness and count") {
    SourceSet x = SourceSet::from_text("01010\n");
    auto w = detect_A(x, 2);
    REQUIRE(w.has_value());
    CHECK(*w == EventWitness{.kind = EventKind::A, .i = 1, .a = 1, .b = 3});
    CHECK(w->to_json() == R"({"kind":"A","i":1,"a":1,"b":3})");
    CHECK(count_A(x, 2) == 2);
    CHECK(validate_witness(x, 2, *w));

    EventWitness tampered = *w;
    tampered.b = 2;
    CHECK(!validate_witness(x, 2, tampered));
}

TEST_CASE("overlapping repeat pair witness") {
    SourceSet x = SourceSet::from_text("00000\n");
    auto w = detect_B(x, 2);
    REQUIRE(w.has_value());
    CHECK(*w == EventWitness{.kind = EventKind::B,
                             .i = 1,
                             .j = 1,
                             .l = 1,
                             .a = 1,
                             .b = 1,
                             .c = 2,
                             .d = 3});
    CHECK(w->to_json() == R"({"kind":"B","i":1,"j":1,"l":1,"a":1,"b":1,"c":2,"d":3})");
    CHECK(validate_witness(x, 2, *w));

    // two cross repeats anchored in x1 within a window of k
    SourceSet x2 = SourceSet::from_text("00110\n11001\n");
    auto w2 = detect_B(x2, 3);
    REQUIRE(w2.has_value());
    CHECK(*w2 == EventWitness{.kind = EventKind::B,
                              .i = 1,
                              .j = 2,
                              .l = 2,
                              .a = 1,
                              .b = 3,
                              .c = 3,
                              .d = 1});
    CHECK(validate_witness(x2, 3, *w2));
    CHECK(!detect_A(x2, 3).has_value());
    CHECK(!detect_D(x2, 3).has_value());
    CHECK(!detect_H(x2, 3).has_value());
}

TEST_CASE("boundary repeat witness") {
    SourceSet x = SourceSet::from_text("0100\n1001\n");
    auto w = detect_C(x, 2);
    REQUIRE(w.has_value());
    CHECK(*w == EventWitness{.kind = EventKind::C, .i = 1, .j = 2, .a = 1, .c = 3});
    CHECK(w->to_json() == R"({"kind":"C","i":1,"j":2,"a":1,"c":3})");
    CHECK(validate_witness(x, 2, *w));
}

TEST_CASE("aligned cross repeat witness") {
    SourceSet x = SourceSet::from_text("0101\n0110\n");
    auto w = detect_D(x, 2);
    REQUIRE(w.has_value());
    CHECK(*w == EventWitness{.kind = EventKind::D, .i = 1, .j = 2, .a = 1});
    CHECK(w->to_json() == R"({"kind":"D","i":1,"j":2,"a":1})");
    CHECK(validate_witness(x, 2, *w));
    CHECK(count_D(x, 2) == 1);
}

TEST_CASE("equal-gap double repeat witness") {
    SourceSet x = SourceSet::from_text("00111\n01110\n");
    auto w = detect_H(x, 2);
    REQUIRE(w.has_value());
    CHECK(*w == EventWitness{.kind = EventKind::H, .i = 1, .j = 2, .a = 2, .b = 3, .c = 1});
    CHECK(w->to_json() == R"({"kind":"H","i":1,"j":2,"a":2,"b":3,"c":1})");
    CHECK(validate_witness(x, 2, *w));
    CHECK(count_H(x, 2) == 3);
}

TEST_CASE("clean instances report nothing") {
    SourceSet x = SourceSet::from_text("00110\n");
    for (EventKind kind : {EventKind::A, EventKind::B, EventKind::C, EventKind::D, EventKind::H})
        CHECK(!detect(kind, x, 3).has_value());
}

TEST_CASE("detect dispatcher matches the per-event entry points") {
    SourceSet x = SourceSet::from_text("0100\n1001\n");
    CHECK(detect(EventKind::C, x, 2) == detect_C(x, 2));
    CHECK(detect(EventKind::A, x, 2) == detect_A(x, 2));
}

TEST_CASE("detectors fire exactly when the exhaustive counts are positive") {
    Params p = make_params(12, 2, 3);
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        SourceSet x = generate_sources(p, seed);
        CAPTURE(seed);
        CHECK(detect_A(x, 3).has_value() == (count_A(x, 3) > 0));
        CHECK(detect_B(x, 3).has_value() == (count_B(x, 3) > 0));
        CHECK(detect_C(x, 3).has_value() == (count_C(x, 3) > 0));
        CHECK(detect_D(x, 3).has_value() == (count_D(x, 3) > 0));
        CHECK(detect_H(x, 3).has_value() == (count_H(x, 3) > 0));
        CHECK(count_D(x, 3) == v_statistic(x, 3));
        CHECK(count_H(x, 3) == u_statistic(x, 3));
        for (EventKind kind :
             {EventKind::A, EventKind::B, EventKind::C, EventKind::D, EventKind::H}) {
            if (auto w = detect(kind, x, 3)) CHECK(validate_witness(x, 3, *w));
        }
    }
}

TEST_CASE("repeated k-mer probe") {
    CHECK(has_repeated_kmer(SourceSet::from_text("0101\n"), 2));
    CHECK(has_repeated_kmer(SourceSet::from_text("0011\n1100\n"), 2));
    CHECK(!has_repeated_kmer(SourceSet::from_text("00110\n"), 3));
}
