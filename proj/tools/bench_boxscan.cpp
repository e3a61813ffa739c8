// Times the box scan: serial reference loop against the OpenMP kernel at
// several thread counts, and verifies the tables agree entry for entry.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include "torface/homology.hpp"
#include "torface/json_io.hpp"

using namespace torface;

template <class F>
static double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

static bool same_table(const CohomologyTable& a, const CohomologyTable& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (size_t i = 0; i < a.entries.size(); ++i) {
        if (a.entries[i].index != b.entries[i].index) return false;
        if (!(a.entries[i].deg == b.entries[i].deg)) return false;
        if (a.entries[i].rank != b.entries[i].rank) return false;
    }
    return true;
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: torface-bench <input.json> [box] [tag]\n");
        return 1;
    }
    int box = argc > 2 ? std::atoi(argv[2]) : 4;
    char tag = argc > 3 ? argv[3][0] : 'J';

    Input in = load_input(argv[1]);
    const ToricFaceRing& r = *in.ring;
    std::printf("input: %s  cells: %d  box: %d  complex: %c\n", argv[1], r.complex().size(), box,
                tag);

    Field f = Field::q();
    CohomologyTable ref;
    {
        HomologyEngine eng(r);
        double t = timed([&] { ref = eng.box_scan_serial(tag, box, f); });
        std::printf("%-12s %8.3fs   entries: %zu\n", "serial", t, ref.entries.size());
    }
    for (int jobs : {1, 2, 4, omp_get_max_threads()}) {
        HomologyEngine eng(r); // fresh caches per run
        CohomologyTable t2;
        double t = timed([&] { t2 = eng.box_scan(tag, box, f, jobs); });
        std::printf("omp jobs=%-3d %8.3fs   %s\n", jobs, t,
                    same_table(ref, t2) ? "matches serial" : "MISMATCH");
    }
    return 0;
}
