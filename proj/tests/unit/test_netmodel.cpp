#include <doctest.h>

#include "gossip/netmodel.hpp"

using namespace gossip;

TEST_SUITE("netmodel") {

TEST_CASE("assigned links stay within the access-link ranges")
{
    Rng rng(5);
    const LinkTable links = assign_links(20000, rng);
    double lat_lo = 1, lat_hi = 0, bw_lo = 1e12, bw_hi = 0;
    for (std::size_t v = 0; v < links.size(); ++v) {
        lat_lo = std::min(lat_lo, links.latency[v]);
        lat_hi = std::max(lat_hi, links.latency[v]);
        bw_lo = std::min(bw_lo, links.bandwidth[v]);
        bw_hi = std::max(bw_hi, links.bandwidth[v]);
    }
    CHECK(lat_lo >= 0.010);
    CHECK(lat_hi <= 0.100);
    CHECK(bw_lo >= 3e6);
    CHECK(bw_hi <= 50e6);
    // the draws actually cover the range
    CHECK(lat_lo < 0.011);
    CHECK(lat_hi > 0.099);
    CHECK(bw_lo < 3.1e6);
    CHECK(bw_hi > 49.9e6);
}

TEST_CASE("same seed, same link table")
{
    Rng a(9), b(9);
    CHECK(assign_links(100, a) == assign_links(100, b));
}

TEST_CASE("invalid ranges are rejected")
{
    Rng rng(1);
    LinkRanges bad;
    bad.bw_min_bps = 0;
    CHECK_THROWS_AS(assign_links(3, rng, bad), std::invalid_argument);
    LinkRanges flipped;
    flipped.lat_min_s = 0.2;
    CHECK_THROWS_AS(assign_links(3, rng, flipped), std::invalid_argument);
}

TEST_CASE("delay formula")
{
    LinkTable links{{0.010, 0.020}, {3e6, 10e6}};
    CHECK(MessageSize::with_rumour().total_bits() == 224);
    CHECK(MessageSize::empty().total_bits() == 160);
    CHECK(message_delay(links, 0, 1, MessageSize::with_rumour()) == doctest::Approx(0.030 + 224.0 / 3e6));
    CHECK(message_delay(links, 0, 1, MessageSize::with_rumour()) == doctest::Approx(0.0300747).epsilon(1e-6));

    SUBCASE("symmetric")
    {
        CHECK(message_delay(links, 0, 1, MessageSize::empty()) == message_delay(links, 1, 0, MessageSize::empty()));
    }
    SUBCASE("doubling the slower bandwidth halves only the transmission term")
    {
        const double before = message_delay(links, 0, 1, MessageSize::with_rumour());
        links.bandwidth = {6e6, 10e6};
        const double after = message_delay(links, 0, 1, MessageSize::with_rumour());
        CHECK((after - 0.030) == doctest::Approx((before - 0.030) / 2));
    }
}

TEST_CASE("property: symmetry, monotonicity and negligible transmission")
{
    Rng rng(77);
    const LinkTable links = assign_links(200, rng);
    for (int i = 0; i < 2000; ++i) {
        const auto u = static_cast<NodeId>(rng.below(200));
        auto v = static_cast<NodeId>(rng.below(200));
        if (u == v)
            v = (v + 1) % 200;
        const double small = message_delay(links, u, v, MessageSize::empty());
        const double big = message_delay(links, u, v, MessageSize::with_rumour());
        CHECK(small == message_delay(links, v, u, MessageSize::empty()));
        CHECK(big >= small);
        CHECK(small > 0);
    }
    LinkTable worst{{0.010, 0.010}, {3e6, 3e6}};
    const double transmission = message_delay(worst, 0, 1, MessageSize::with_rumour()) - 0.020;
    CHECK(transmission <= 7.5e-5);
    CHECK(transmission < 0.01 * 0.020);
    // raising one latency never shortens the delay
    LinkTable slower = worst;
    slower.latency[0] = 0.05;
    CHECK(message_delay(slower, 0, 1, MessageSize::empty()) > message_delay(worst, 0, 1, MessageSize::empty()));
}

} // TEST_SUITE
