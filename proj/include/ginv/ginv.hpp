#pragma once

#include "ginv/decomp.hpp"
#include "ginv/errors.hpp"
#include "ginv/fixtures.hpp"
#include "ginv/geninv.hpp"
#include "ginv/io.hpp"
#include "ginv/matcore.hpp"
#include "ginv/oracle.hpp"
#include "ginv/orders.hpp"
