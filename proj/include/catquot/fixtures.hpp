#pragma once

// Small categories shared by tests, the acceptance suite and the CLI.

#include <string>
#include <vector>

#include "catquot/category.hpp"

namespace catquot::fixtures {

CategoryRef walking_arrow();   // A: 0 -f-> 1
CategoryRef square();          // E = A x A, objects (i,j)
CategoryRef terminal();        // one object, identity only
CategoryRef z2();              // one object, s . s = id
CategoryRef parallel_pair();   // f, g : a -> b
CategoryRef zero_object();     // 0 <-> X with the zero endomorphism of X
CategoryRef discrete_pair();   // two objects, identities only: no products

CategoryRef chain(int n);      // 0 < 1 < ... < n-1
CategoryRef grid(int a, int b);
CategoryRef cube();            // 2^3
CategoryRef diamond();         // M3
CategoryRef pentagon();        // N5
CategoryRef doubled_top();     // 0 -> 1 ~ 1'
CategoryRef square_with_bottom();

// Finite categories with finite limits and colimits.
std::vector<CategoryRef> corpus();

// Principal filter of E at (0,1).
std::vector<std::string> phi01();

}  // namespace catquot::fixtures
