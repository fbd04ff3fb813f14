#ifndef SUPERLAX_SRC_PARALLEL_HPP
#define SUPERLAX_SRC_PARALLEL_HPP

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

namespace superlax::detail
{

// Runs f(0..count-1) on up to hardware_concurrency threads, striding the indices.
template <typename F>
void parallel_for(int count, F &&f)
{
    const int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (workers == 1 || count < 2) {
        for (int t = 0; t < count; ++t) {
            f(t);
        }
        return;
    }
    std::vector<std::future<void>> jobs;
    for (int w = 0; w < std::min(workers, count); ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (int t = w; t < count; t += workers) {
                f(t);
            }
        }));
    }
    for (auto &j : jobs) {
        j.get();
    }
}

} // namespace superlax::detail

#endif
