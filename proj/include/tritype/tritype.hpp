#pragma once

// Umbrella header: supercharacter theories of finite triangular-type groups
// G = H + J over F_q, with exact cyclotomic values throughout.

#include "tritype/algebra.hpp"
#include "tritype/cyclotomic.hpp"
#include "tritype/errors.hpp"
#include "tritype/fixtures.hpp"
#include "tritype/fq.hpp"
#include "tritype/fqpoly.hpp"
#include "tritype/group.hpp"
#include "tritype/idempotents.hpp"
#include "tritype/io.hpp"
#include "tritype/kirillov.hpp"
#include "tritype/linalg.hpp"
#include "tritype/orbits.hpp"
#include "tritype/supertheory.hpp"
