#pragma once

#include "capcert/ball_cover.hpp"
#include "capcert/cap_measure.hpp"
#include "capcert/certificate.hpp"
#include "capcert/certify.hpp"
#include "capcert/construct.hpp"
#include "capcert/enclosing.hpp"
#include "capcert/geometry.hpp"
#include "capcert/io.hpp"
#include "capcert/multiplicity.hpp"
#include "capcert/parallel.hpp"
#include "capcert/random.hpp"
#include "capcert/sampling.hpp"
#include "capcert/set_cover.hpp"
#include "capcert/witness.hpp"
