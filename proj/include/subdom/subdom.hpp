#pragma once

#include "subdom/channel.hpp"
#include "subdom/fourier.hpp"
#include "subdom/multiuser.hpp"
#include "subdom/numeric.hpp"
#include "subdom/parallel.hpp"
#include "subdom/random.hpp"
#include "subdom/statistics.hpp"
