#pragma once

#include <gmpxx.h>

#include <vector>

namespace fixtures {

inline std::vector<mpq_class> q(std::initializer_list<const char*> xs)
{
    std::vector<mpq_class> out;
    for (const char* s : xs) {
        mpq_class v(s);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

inline std::vector<mpq_class> example1()
{
    return q({"-103079215104", "59055800320", "-13656653824", "1613758464", "-101220352", "3134464", "-37024", "1"});
}

inline std::vector<mpq_class> example2()
{
    return q({"-1/4194304", "-1/65536", "-27/65536", "-53/8192", "-243/4096", "-51/256", "5/64", "1"});
}

inline std::vector<mpq_class> example3()
{
    return q({"1", "4", "6", "4", "-7", "-16", "0", "8"});
}

} // namespace fixtures
