#pragma once

#include <exception>
#include <mutex>

namespace schroder_lab {

// Every kernel that loops over independent points takes one of these. The
// serial path is the reference the parallel one is tested against.
enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, n). Iterations must write to disjoint slots, so
// results are identical under both policies. If iterations throw, one of the
// exceptions is rethrown after the loop.
template <class Body>
void for_each_index(long n, Exec exec, Body&& body)
{
    if (exec == Exec::Serial) {
        for (long i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr first;
    std::mutex guard;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!first) {
                first = std::current_exception();
            }
        }
    }
    if (first) {
        std::rethrow_exception(first);
    }
}

}  // namespace schroder_lab
