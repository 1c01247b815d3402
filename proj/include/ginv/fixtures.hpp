#pragma once

// Small exact reference matrices with known inverses and order verdicts.

#include "ginv/matcore.hpp"

namespace ginv::fixtures {

/// 4x4 matrix of index 2 whose six generalized inverses are pairwise distinct.
inline Matrix index_two() {
    return make_matrix(4, 4, {1, 0, 1, 0,
                              0, 1, 0, 1,
                              0, 0, 0, 1,
                              0, 0, 0, 0});
}

struct IndexTwoInverses {
    Matrix mp;
    Matrix drazin;
    Matrix dmp;
    Matrix bt;
    Matrix core_ep;
    Matrix wg;
};

inline IndexTwoInverses index_two_inverses() {
    return {
        make_matrix(4, 4, {0.5, 0, 0, 0,
                           0, 1, -1, 0,
                           0.5, 0, 0, 0,
                           0, 0, 1, 0}),
        make_matrix(4, 4, {1, 0, 1, 1,
                           0, 1, 0, 1,
                           0, 0, 0, 0,
                           0, 0, 0, 0}),
        make_matrix(4, 4, {1, 0, 1, 0,
                           0, 1, 0, 0,
                           0, 0, 0, 0,
                           0, 0, 0, 0}),
        make_matrix(4, 4, {0.5, 0, 0, 0,
                           0, 1, 0, 0,
                           0.5, 0, 0, 0,
                           0, 0, 0, 0}),
        make_matrix(4, 4, {1, 0, 0, 0,
                           0, 1, 0, 0,
                           0, 0, 0, 0,
                           0, 0, 0, 0}),
        make_matrix(4, 4, {1, 0, 1, 0,
                           0, 1, 0, 1,
                           0, 0, 0, 0,
                           0, 0, 0, 0}),
    };
}

/// A <=WG B and B <=WG A although A != B.
inline Matrix wg_antisymmetry_a() { return make_matrix(3, 3, {1, 1, 1, 0, 0, 1, 0, 0, 0}); }
inline Matrix wg_antisymmetry_b() { return make_matrix(3, 3, {1, 1, 1, 0, 0, 2, 0, 0, 0}); }

/// A <=WG B but not A <=D B (same pair as above).
inline Matrix wg_not_drazin_a() { return wg_antisymmetry_a(); }
inline Matrix wg_not_drazin_b() { return wg_antisymmetry_b(); }
inline Matrix wg_not_drazin_a_drazin() { return make_matrix(3, 3, {1, 1, 2, 0, 0, 0, 0, 0, 0}); }

/// A <=D B and A <=#,- B, but neither A <=WG B nor A <=CE B.
inline Matrix drazin_not_wg_a() { return make_matrix(3, 3, {1, 2, 0, 0, 0, 0, 0, 0, 0}); }
inline Matrix drazin_not_wg_b() { return make_matrix(3, 3, {1, 2, -2, 0, 0, 1, 0, 0, 0}); }
inline Matrix drazin_not_wg_b1() { return make_matrix(3, 3, {1, 2, -2, 0, 0, 0, 0, 0, 0}); }
inline Matrix drazin_not_wg_b2() { return make_matrix(3, 3, {0, 0, 0, 0, 0, 1, 0, 0, 0}); }

/// A <=WG B, yet A^2 is not below B^2.
inline Matrix wg_not_squared_a() { return make_matrix(3, 3, {1, 1, 1, 0, 0, 0, 0, 0, 0}); }
inline Matrix wg_not_squared_b() { return make_matrix(3, 3, {1, 1, 1, 0, 0, 2, 0, 0, 0}); }

}  // namespace ginv::fixtures
