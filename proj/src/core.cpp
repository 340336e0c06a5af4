#include "limview/core.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace limview {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::DegenerateTangent: return "DegenerateTangent";
    case ErrorKind::NotInside: return "NotInside";
    case ErrorKind::NonUniformGrid: return "NonUniformGrid";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::GridOutsideDomain: return "GridOutsideDomain";
    case ErrorKind::ProbeOutsideGrid: return "ProbeOutsideGrid";
    case ErrorKind::EmptySampleSet: return "EmptySampleSet";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Io: return "IoFailure";
    }
    return "Error";
}

int default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    std::size_t workers = static_cast<std::size_t>(threads <= 0 ? default_thread_count() : threads);
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace limview
