#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include <doctest.h>

#include "firepx/parallel.hpp"

using namespace firepx;

namespace {

struct EnvGuard {
    std::string saved;
    bool had = false;
    EnvGuard() {
        if (const char* v = std::getenv("FIREPX_THREADS")) {
            saved = v;
            had = true;
        }
    }
    ~EnvGuard() {
        if (had)
            setenv("FIREPX_THREADS", saved.c_str(), 1);
        else
            unsetenv("FIREPX_THREADS");
    }
};

}  // namespace

TEST_CASE("thread cap follows the environment variable") {
    EnvGuard guard;
    setenv("FIREPX_THREADS", "3", 1);
    CHECK(thread_cap() == 3);
    setenv("FIREPX_THREADS", "1", 1);
    CHECK(thread_cap() == 1);
    setenv("FIREPX_THREADS", "garbage", 1);
    CHECK(thread_cap() == 1);
    setenv("FIREPX_THREADS", "0", 1);
    CHECK(thread_cap() == 1);
    unsetenv("FIREPX_THREADS");
    CHECK(thread_cap() >= 1);
}

TEST_CASE("parallel_for visits every index exactly once") {
    EnvGuard guard;
    for (const char* workers : {"1", "4"}) {
        setenv("FIREPX_THREADS", workers, 1);
        const std::size_t n = 1000;
        std::vector<std::atomic<int>> hits(n);
        parallel_for(n, [&](std::size_t i) { hits[i].fetch_add(1); });
        for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
    }
    parallel_for(0, [](std::size_t) { FAIL("must not be called"); });
}

TEST_CASE("per-index slots make parallel results order-independent") {
    EnvGuard guard;
    std::vector<std::size_t> a(500), b(500);
    setenv("FIREPX_THREADS", "1", 1);
    parallel_for(a.size(), [&](std::size_t i) { a[i] = i * i; });
    setenv("FIREPX_THREADS", "8", 1);
    parallel_for(b.size(), [&](std::size_t i) { b[i] = i * i; });
    CHECK(a == b);
}
