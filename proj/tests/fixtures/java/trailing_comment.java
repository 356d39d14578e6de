int x = 1; // set x
int y = 2; /* also code */
