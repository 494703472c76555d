#ifndef FROBSPLIT_FROBSPLIT_HPP
#define FROBSPLIT_FROBSPLIT_HPP

// Exact computer algebra for Frobenius pushforward decompositions of
// invariant rings of finite groups in positive characteristic.

#include "frobsplit/field.hpp"
#include "frobsplit/frobdecomp.hpp"
#include "frobsplit/fsing.hpp"
#include "frobsplit/group.hpp"
#include "frobsplit/io.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/modrep.hpp"
#include "frobsplit/moore.hpp"
#include "frobsplit/parse.hpp"
#include "frobsplit/poly.hpp"
#include "frobsplit/rational.hpp"
#include "frobsplit/version.hpp"

#endif  // FROBSPLIT_FROBSPLIT_HPP
