#include <doctest.h>

#include "bellforge/schemes.hpp"

using namespace bellforge;

TEST_CASE("scheme definitions validate and count photons") {
    const SchemeSpec six = six_mode_scheme();
    six.validate();
    CHECK(six.n_modes == 6);
    CHECK(six.input_occupation == OccupationVector{1, 1, 1, 1, 0, 0});
    CHECK(six.aux_modes == std::vector<int>{4, 5});
    CHECK(six.herald_pattern == OccupationVector{1, 1});
    CHECK(six.total_photons() == 4);
    CHECK_FALSE(six.two_stage());

    const SchemeSpec five = five_mode_scheme();
    five.validate();
    CHECK(five.n_modes == 5);
    CHECK(five.aux_modes == std::vector<int>{4});
    CHECK(five.herald_pattern == OccupationVector{2});
    CHECK(five.total_photons() == 4);

    const SchemeSpec staged = two_stage_scheme();
    staged.validate();
    CHECK(staged.n_modes == 5);
    CHECK(staged.input_occupation == OccupationVector{1, 1, 1, 0, 0});
    CHECK(staged.herald_pattern == OccupationVector{1});
    CHECK(staged.fresh_photon_mode == 4);
    CHECK(staged.stage2_herald == OccupationVector{1});
    CHECK(staged.two_stage());
    CHECK(staged.total_photons() == 4);  // three inputs plus the fresh photon
}

TEST_CASE("scheme validation rejects broken bookkeeping") {
    SchemeSpec s = six_mode_scheme();
    s.herald_pattern = OccupationVector{2, 1};  // 2 + 3 != 4 photons
    CHECK_THROWS(s.validate());

    SchemeSpec overlap = six_mode_scheme();
    overlap.aux_modes = {3, 5};  // collides with logical mode 3
    CHECK_THROWS(overlap.validate());

    SchemeSpec wide = five_mode_scheme();
    wide.input_occupation = OccupationVector{1, 1, 1, 1, 0, 0};
    CHECK_THROWS(wide.validate());
}

TEST_CASE("scheme type names round-trip") {
    for (SchemeType t : {SchemeType::SixMode, SchemeType::FiveMode, SchemeType::TwoStage})
        CHECK(scheme_type_from_name(scheme_type_name(t)) == t);
    CHECK_THROWS(scheme_type_from_name("seven-mode"));
}
