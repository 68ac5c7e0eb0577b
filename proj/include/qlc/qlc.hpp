#pragma once

#include "qlc/approx.hpp"
#include "qlc/bounds.hpp"
#include "qlc/construct.hpp"
#include "qlc/covering.hpp"
#include "qlc/errors.hpp"
#include "qlc/io.hpp"
#include "qlc/matrix.hpp"
#include "qlc/parallel.hpp"
#include "qlc/protocol.hpp"
#include "qlc/region.hpp"
#include "qlc/sign_vector.hpp"
#include "qlc/span.hpp"
#include "qlc/verify.hpp"
