#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>

#include "abusekit/errors.hpp"
#include "abusekit/io.hpp"
#include "abusekit/rng.hpp"
#include "abusekit/status.hpp"

using namespace abusekit;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("abusekit_status_" + name);
}

}  // namespace

TEST_CASE("resolve_status maps the documented codes") {
    CHECK(status::resolve_status({true, 0}) == status::AccountState::active);
    CHECK(status::resolve_status({false, 63}) == status::AccountState::suspended);
    CHECK(status::resolve_status({false, 50}) == status::AccountState::deleted);
    CHECK_THROWS_AS(status::resolve_status({false, 88}), ParseError);
    CHECK_THROWS_AS(status::resolve_status({false, 0}), ParseError);
}

TEST_CASE("mock provider reads codes from csv") {
    const auto path = temp_file("codes.csv");
    io::write_text(path, "user_id,code\nu1,0\nu2,63\nu3,50\n");
    status::MockStatusProvider provider(path);
    CHECK(status::resolve_status(provider.fetch("u1")) == status::AccountState::active);
    CHECK(status::resolve_status(provider.fetch("u2")) == status::AccountState::suspended);
    CHECK(status::resolve_status(provider.fetch("u3")) == status::AccountState::deleted);
    CHECK_THROWS_AS(provider.fetch("unknown"), ParseError);
}

TEST_CASE("fetch_statuses merges deterministically by user id") {
    const auto path = temp_file("codes2.csv");
    std::string csv = "user_id,code\n";
    std::vector<std::string> ids;
    for (int i = 0; i < 40; ++i) {
        const std::string id = "u" + std::to_string(100 - i);  // reverse order
        ids.push_back(id);
        csv += id + "," + (i % 3 == 0 ? "63" : i % 3 == 1 ? "50" : "0") + "\n";
    }
    io::write_text(path, csv);
    status::MockStatusProvider provider(path);
    const auto a = status::fetch_statuses(provider, ids, "snap", 8);
    const auto b = status::fetch_statuses(provider, ids, "snap", 2);
    REQUIRE(a.size() == ids.size());
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].user_id < a[i].user_id);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].user_id == b[i].user_id);
        CHECK(a[i].state == b[i].state);
        CHECK(a[i].snapshot == "snap");
    }
}

TEST_CASE("http provider speaks the same code contract") {
    httplib::Server server;
    server.Get(R"(/status/(\w+))", [](const httplib::Request& req, httplib::Response& res) {
        const std::string user = req.matches[1];
        int code = 0;
        if (user == "banned") code = 63;
        if (user == "gone") code = 50;
        res.set_content("{\"code\": " + std::to_string(code) + "}", "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread serve([&server] { server.listen_after_bind(); });
    server.wait_until_ready();

    status::HttpStatusProvider provider("127.0.0.1:" + std::to_string(port));
    CHECK(status::resolve_status(provider.fetch("alive")) == status::AccountState::active);
    CHECK(status::resolve_status(provider.fetch("banned")) == status::AccountState::suspended);
    CHECK(status::resolve_status(provider.fetch("gone")) == status::AccountState::deleted);

    server.stop();
    serve.join();
}

TEST_CASE("status distribution percentages") {
    std::vector<status::AccountStatus> statuses = {
        {"u1", status::AccountState::active, "s"},
        {"u2", status::AccountState::active, "s"},
        {"u3", status::AccountState::suspended, "s"},
        {"u4", status::AccountState::deleted, "s"},
    };
    std::map<std::string, std::string> groups = {
        {"u1", "g"}, {"u2", "g"}, {"u3", "g"}, {"u4", "g"}};
    const auto dist = status::status_distribution(statuses, groups);
    CHECK(dist.at("g").active == doctest::Approx(50.0));
    CHECK(dist.at("g").deleted == doctest::Approx(25.0));
    CHECK(dist.at("g").suspended == doctest::Approx(25.0));
    CHECK(dist.at("g").active + dist.at("g").deleted + dist.at("g").suspended ==
          doctest::Approx(100.0));

    std::vector<status::AccountStatus> all_active = {{"u1", status::AccountState::active, "s"}};
    const auto full = status::status_distribution(all_active, groups);
    CHECK(full.at("g").active == doctest::Approx(100.0));

    CHECK_THROWS_AS(status::status_distribution({{"zz", status::AccountState::active, "s"}}, groups),
                    ContractViolation);
}

TEST_CASE("snapshot_compare identical snapshots have zero deltas") {
    std::vector<status::AccountStatus> snap1 = {
        {"u1", status::AccountState::active, "t1"},
        {"u2", status::AccountState::suspended, "t1"},
    };
    auto snap2 = snap1;
    for (auto& s : snap2) s.snapshot = "t2";
    std::map<std::string, std::string> labels = {{"u1", "bully"}, {"u2", "bully"}};

    const auto diff = status::snapshot_compare({snap1, snap2}, labels);
    REQUIRE(diff.deltas.at("bully").size() == 1);
    CHECK(diff.deltas.at("bully")[0].active == doctest::Approx(0.0));
    CHECK(diff.deltas.at("bully")[0].suspended == doctest::Approx(0.0));
}

TEST_CASE("snapshot_compare: one user flipping moves the full 100 points") {
    std::vector<status::AccountStatus> before = {{"u1", status::AccountState::active, "t1"}};
    std::vector<status::AccountStatus> after = {{"u1", status::AccountState::suspended, "t2"}};
    std::map<std::string, std::string> labels = {{"u1", "bully"}};

    const auto diff = status::snapshot_compare({before, after}, labels);
    CHECK(diff.deltas.at("bully")[0].suspended == doctest::Approx(100.0));
    CHECK(diff.deltas.at("bully")[0].active == doctest::Approx(-100.0));

    // swapping the order negates the deltas
    const auto swapped = status::snapshot_compare({after, before}, labels);
    CHECK(swapped.deltas.at("bully")[0].suspended == doctest::Approx(-100.0));
    CHECK(swapped.deltas.at("bully")[0].active == doctest::Approx(100.0));
}

TEST_CASE("snapshot_compare rejects universe mismatches, naming the difference") {
    std::vector<status::AccountStatus> a = {{"u1", status::AccountState::active, "t1"}};
    std::vector<status::AccountStatus> b = {{"u2", status::AccountState::active, "t2"}};
    std::map<std::string, std::string> labels = {{"u1", "x"}, {"u2", "x"}};
    try {
        status::snapshot_compare({a, b}, labels);
        FAIL("expected ContractViolation");
    } catch (const ContractViolation& e) {
        const std::string msg = e.what();
        CHECK(msg.find("u1") != std::string::npos);
        CHECK(msg.find("u2") != std::string::npos);
    }
}

TEST_CASE("status classifier separates status-separable features") {
    ml::Dataset ds;
    ds.feature_names = {"signal"};
    std::mt19937_64 gen(3);
    const std::vector<std::string> states = {"active", "deleted", "suspended"};
    for (int i = 0; i < 120; ++i) {
        const auto& state = states[static_cast<std::size_t>(i % 3)];
        const double base = state == "active" ? 0.0 : state == "deleted" ? 10.0 : 20.0;
        ds.x.push_back({base + rng::uniform_real(gen, 0.0, 1.0)});
        ds.y.push_back(state);
    }
    const auto report = status::train_status_classifier(ds, 17, 3, 5);
    CHECK(report.weighted.f1 >= 0.9);

    const auto again = status::train_status_classifier(ds, 17, 3, 5);
    CHECK(report.accuracy == again.accuracy);
    CHECK(report.weighted.f1 == again.weighted.f1);

    ml::Dataset single;
    single.feature_names = {"x"};
    single.x = {{0.0}, {1.0}};
    single.y = {"active", "active"};
    CHECK_THROWS_AS(status::train_status_classifier(single, 1, 2, 2), ContractViolation);
}

TEST_CASE("status csv round trip") {
    const auto path = temp_file("statuses.csv");
    std::vector<status::AccountStatus> statuses = {
        {"u1", status::AccountState::active, "snap"},
        {"u2", status::AccountState::suspended, "snap"},
        {"u3", status::AccountState::deleted, "snap"},
    };
    status::write_status_csv(path, statuses);
    const auto loaded = status::load_status_csv(path, "snap");
    REQUIRE(loaded.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(loaded[i].user_id == statuses[i].user_id);
        CHECK(loaded[i].state == statuses[i].state);
    }
}
