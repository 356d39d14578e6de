// just this