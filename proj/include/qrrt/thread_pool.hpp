#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <future>
#include <mutex>
#include <queue>
#include <thread>
#include <type_traits>
#include <vector>

namespace qrrt {

/// Fixed-size pool of worker threads draining a FIFO task queue.
class ThreadPool {
public:
    explicit ThreadPool(std::size_t threads);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    std::size_t size() const noexcept { return threads_.size(); }

    template <typename F>
    auto submit(F&& f) -> std::future<std::invoke_result_t<F>>
    {
        using R = std::invoke_result_t<F>;
        auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(f));
        auto fut = task->get_future();
        {
            std::lock_guard lock(mutex_);
            queue_.emplace([task] { (*task)(); });
        }
        cv_.notify_one();
        return fut;
    }

private:
    void loop();

    std::vector<std::thread> threads_;
    std::queue<std::function<void()>> queue_;
    std::mutex mutex_;
    std::condition_variable cv_;
    bool stopping_ = false;
};

/// Runs fn(0) ... fn(count - 1) and returns the results indexed by task id.
/// With no pool the tasks run inline; results are identical either way as
/// long as fn is a pure function of its index.
template <typename F>
auto map_indexed(ThreadPool* pool, std::size_t count, F&& fn)
    -> std::vector<std::invoke_result_t<F&, std::size_t>>
{
    using R = std::invoke_result_t<F&, std::size_t>;
    std::vector<R> out;
    out.reserve(count);
    if (pool == nullptr || pool->size() == 0 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(fn(i));
        }
        return out;
    }
    std::vector<std::future<R>> futures;
    futures.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        futures.push_back(pool->submit([&fn, i] { return fn(i); }));
    }
    for (auto& f : futures) {
        out.push_back(f.get());
    }
    return out;
}

} // namespace qrrt
