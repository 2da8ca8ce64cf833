#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "pihash/raster.hpp"
#include "pihash/rng.hpp"

using namespace pihash;

TEST_CASE("to_grayscale applies BT.601 luma") {
    RasterImage img(3, 1, 3);
    img.pixels = {255, 255, 255, /**/ 255, 0, 0, /**/ 0, 0, 0};
    const RasterImage gray = to_grayscale(img);
    REQUIRE(gray.channels == 1);
    CHECK(gray.pixels[0] == 255);
    CHECK(gray.pixels[1] == 76); // round(0.299 * 255)
    CHECK(gray.pixels[2] == 0);
}

TEST_CASE("to_grayscale is the identity on grayscale input and idempotent") {
    SeededRng rng(7);
    RasterImage img(9, 5, 3);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
    const RasterImage g1 = to_grayscale(img);
    const RasterImage g2 = to_grayscale(g1);
    CHECK(g1.pixels == g2.pixels);
}

TEST_CASE("resize_bilinear identity and constants") {
    SeededRng rng(11);
    RasterImage img(13, 7, 3);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
    CHECK(resize_bilinear(img, 13, 7).pixels == img.pixels);

    RasterImage flat(10, 10, 1, 77);
    for (int side : {1, 3, 10, 17, 64}) {
        const RasterImage r = resize_bilinear(flat, side, side);
        for (auto p : r.pixels) REQUIRE(p == 77);
    }
}

TEST_CASE("resize_bilinear matches the stated coordinate rule") {
    // 2x1 image [0, 255] -> 4x1. Source positions are (x + 0.5) / 2 - 0.5 =
    // {-0.25, 0.25, 0.75, 1.25}; clamped ends, interior weights 3/4 and 1/4:
    // 0.25 -> 63.75 (rounds 64), 0.75 -> 191.25 (rounds 191).
    RasterImage img(2, 1, 1);
    img.pixels = {0, 255};
    const RasterImage out = resize_bilinear(img, 4, 1);
    CHECK(out.pixels == std::vector<std::uint8_t>{0, 64, 191, 255});
}

TEST_CASE("resize_bilinear commutes with rot90") {
    SeededRng rng(29);
    RasterImage img(37, 23, 1);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
    const RasterImage a = resize_bilinear(rot90(img), 64, 64);
    const RasterImage b = rot90(resize_bilinear(img, 64, 64));
    CHECK(a.pixels == b.pixels);
}

TEST_CASE("rgb_to_lab reference points") {
    RasterImage img(3, 1, 3);
    img.pixels = {255, 255, 255, /**/ 0, 0, 0, /**/ 255, 0, 0};
    const LabImage lab = rgb_to_lab(img);

    CHECK(lab.L.values[0] == Catch::Approx(100.0).margin(1e-6));
    CHECK(std::abs(lab.a.values[0]) < 0.01);
    CHECK(std::abs(lab.b.values[0]) < 0.01);

    CHECK(lab.L.values[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(lab.a.values[1] == Catch::Approx(0.0).margin(1e-9));
    CHECK(lab.b.values[1] == Catch::Approx(0.0).margin(1e-9));

    CHECK(lab.L.values[2] == Catch::Approx(53.24).margin(0.1));
    CHECK(lab.a.values[2] == Catch::Approx(80.09).margin(0.1));
    CHECK(lab.b.values[2] == Catch::Approx(67.20).margin(0.1));
}

TEST_CASE("rgb_to_lab agrees with the scalar reference chain") {
    SeededRng rng(13);
    RasterImage img(32, 1, 3);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_u64() & 0xff);
    const LabImage lab = rgb_to_lab(img);
    for (int x = 0; x < img.width; ++x) {
        const auto ref =
            oracles::srgb_to_lab_reference(img.at(x, 0, 0), img.at(x, 0, 1), img.at(x, 0, 2));
        CHECK(lab.L.at(x, 0) == Catch::Approx(ref.L).margin(1e-4));
        CHECK(lab.a.at(x, 0) == Catch::Approx(ref.a).margin(1e-4));
        CHECK(lab.b.at(x, 0) == Catch::Approx(ref.b).margin(1e-4));
    }
}

TEST_CASE("rgb_to_lab gray ramp: a,b near zero, L increasing") {
    RasterImage ramp(16, 1, 3);
    for (int i = 0; i < 16; ++i) {
        const std::uint8_t v = static_cast<std::uint8_t>(i * 17);
        ramp.at(i, 0, 0) = ramp.at(i, 0, 1) = ramp.at(i, 0, 2) = v;
    }
    const LabImage lab = rgb_to_lab(ramp);
    for (int i = 0; i < 16; ++i) {
        CHECK(std::abs(lab.a.at(i, 0)) < 0.05);
        CHECK(std::abs(lab.b.at(i, 0)) < 0.05);
        if (i > 0) CHECK(lab.L.at(i, 0) > lab.L.at(i - 1, 0));
    }
}

TEST_CASE("rgb_to_lab rejects grayscale input") {
    RasterImage gray(2, 2, 1, 10);
    CHECK_THROWS_AS(rgb_to_lab(gray), std::invalid_argument);
}

TEST_CASE("convolve3x3 basics") {
    SeededRng rng(17);
    RasterImage img(8, 8, 1);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_u64() & 0xff);

    SECTION("identity kernel") {
        const std::array<double, 9> id{0, 0, 0, 0, 1, 0, 0, 0, 0};
        CHECK(convolve3x3(img, id).pixels == img.pixels);
    }

    SECTION("normalized kernel keeps constants") {
        RasterImage flat(5, 4, 3, 99);
        const std::array<double, 9> box{1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0,
                                        1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0};
        CHECK(convolve3x3(flat, box).pixels == flat.pixels);
    }

    SECTION("box kernel center equals the mean of nine") {
        RasterImage tiny(3, 3, 1);
        tiny.pixels = {10, 20, 30, 40, 50, 60, 70, 80, 90};
        const std::array<double, 9> box{1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0,
                                        1 / 9.0, 1 / 9.0, 1 / 9.0, 1 / 9.0};
        const RasterImage out = convolve3x3(tiny, box);
        CHECK(out.at(1, 1) == 50); // (10+...+90)/9
    }
}

TEST_CASE("psnr is +inf for identical images and finite otherwise") {
    RasterImage a(4, 4, 1, 100);
    CHECK(std::isinf(psnr(a, a)));
    RasterImage b = a;
    b.pixels[0] = 101;
    CHECK(psnr(a, b) > 40.0);
    CHECK(std::isfinite(psnr(a, b)));
}
