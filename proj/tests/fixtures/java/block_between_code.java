int a; /* mid */ int b;
/* full line */
int c;
